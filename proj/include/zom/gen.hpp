#pragma once

#include <cstdint>
#include <string>

#include "zom/baseline.hpp"
#include "zom/graph.hpp"

namespace zom {

// Seeded instance generators shared by the CLI and the acceptance suite.
// Identical seed and parameters always produce identical instances.

BipartiteGraph gen_random_graph(std::uint64_t seed, int n_a, int n_b, int m, double p1);

// rows x cols lattice with checkerboard bipartition, all weights 0,
// lattice coordinates attached.
BipartiteGraph gen_lattice(int rows, int cols);

enum class PointDistribution { Uniform, Clustered };
PointDistribution point_distribution_from(const std::string& name);

PointSet gen_points(std::uint64_t seed, int n_per_side, PointDistribution dist);

} // namespace zom
