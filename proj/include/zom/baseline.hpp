#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "zom/graph.hpp"

namespace zom {

struct Matching {
    std::vector<int> mate_a;  // -1 = free
    std::vector<int> mate_b;
    int size = 0;
};

using EdgeFilter = std::function<bool(int edge_id)>;

// Hopcroft-Karp over the edges passing `filter` (all edges when empty).
// BFS layering plus DFS for a maximal set of vertex-disjoint shortest
// augmenting paths per phase.
Matching hopcroft_karp(const BipartiteGraph& g, const EdgeFilter& filter = {});

struct OracleResult {
    int matching_size = 0;
    std::vector<std::pair<int, int>> matching;   // (a, b) pairs
    std::vector<int> cover;                      // Koenig certificate, global vertex ids
    bool size_warning = false;                   // instance above the intended oracle scale
};

// Exact maximum matching by single augmenting-path search, with a vertex
// cover of equal size as the optimality certificate. Intended for
// n_a+n_b <= 200; larger inputs still run but set size_warning.
OracleResult brute_force_max_matching(const BipartiteGraph& g);

struct Point {
    double x = 0;
    double y = 0;
};

struct PointSet {
    std::vector<Point> a;
    std::vector<Point> b;
};

struct BottleneckOracleResult {
    double distance = 0;                        // exact bottleneck value
    double squared_distance = 0;                // same value before the square root
    std::vector<int> mate_a;                    // witness perfect matching
};

// Exact bottleneck distance: binary search over the sorted pairwise
// distances with a Hopcroft-Karp feasibility test per candidate.
// Comparisons happen on squared distances; one square root at the end.
BottleneckOracleResult oracle_bottleneck(const PointSet& points);

double squared_dist(const Point& p, const Point& q);
double dist(const Point& p, const Point& q);

} // namespace zom
