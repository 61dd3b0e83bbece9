#pragma once

#include <functional>
#include <vector>

#include "zom/graph.hpp"

namespace zom {

// One recursive split: the separator vertices and the two sides, all as
// global vertex ids of the subgraph being split. Sides keep every
// non-separator vertex; no edge may join X to Y directly.
struct SeparatorStep {
    std::vector<int> separator;
    std::vector<int> side_x;
    std::vector<int> side_y;
};

// Produces a step for the induced subgraph on `vertices`. Called only on
// subgraphs above the size threshold.
using SeparatorFn =
    std::function<SeparatorStep(const BipartiteGraph&, const std::vector<int>& vertices)>;

struct SeparatorOptions {
    double alpha = 3.0;  // balance: min side >= |V'|/alpha
    double c_v = 2.0;    // piece vertex bound: c_v * r
    double c_e = 4.0;    // piece edge bound: c_e * m * r / n
};

struct WeightAssignment {
    std::vector<int> weight;      // per edge, 0 or 1
    int steps = 0;                // separator invocations
    int separator_vertices = 0;   // total, counted with multiplicity across levels
};

// Recursively splits with `separator_fn`, weighting every edge incident on
// a separator vertex 1 and everything inside the final subgraphs 0, until
// each subgraph fits the configured piece bounds. Steps violating balance
// or separation are rejected with diagnostics.
WeightAssignment assign_weights_recursive(const BipartiteGraph& g, int r,
                                          const SeparatorFn& separator_fn,
                                          const SeparatorOptions& options = {});

// Built-in separator for graphs carrying 2D lattice coordinates: the
// weighted-median row or column of the larger dimension.
SeparatorStep grid_graph_separator(const BipartiteGraph& g, const std::vector<int>& vertices);

// Copy of `g` with the given weights (piece ids reset; recompute after).
BipartiteGraph reweighted(const BipartiteGraph& g, const std::vector<int>& weights);

} // namespace zom
