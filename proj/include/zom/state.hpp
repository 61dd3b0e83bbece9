#pragma once

#include <string>
#include <vector>

#include "zom/graph.hpp"

namespace zom {

// Matching plus integer dual weights plus the per-edge deletion stamp used
// by the phase matcher. All dual arithmetic is exact machine-integer math;
// weights in {0,1} keep every quantity within a few multiples of n.
struct MatchState {
    std::vector<int> mate_a;         // -1 = free
    std::vector<int> mate_b;
    std::vector<int> dual_a;         // y(a)
    std::vector<int> dual_b;         // y(b)
    std::vector<int> deleted_epoch;  // per edge: phase in which it was dropped, 0 = live
    int phase = 0;                   // current phase index, 1-based once running

    static MatchState initial(const BipartiteGraph& g);

    bool matched(const BipartiteGraph& g, int edge_id) const {
        const Edge& e = g.edges[edge_id];
        return mate_a[e.a] == e.b;
    }
    bool deleted(int edge_id) const { return deleted_epoch[edge_id] == phase; }
    int matching_size() const;
    int matching_weight(const BipartiteGraph& g) const;
};

// Slack of an edge under the current duals: 0 for matching edges,
// c(a,b) + y(a) - y(b) otherwise. A negative value means the state is
// infeasible and is reported as an invariant failure.
int slack(const BipartiteGraph& g, int edge_id, const MatchState& state);

struct FeasibilityViolation {
    int edge_id;
    std::string condition;  // which side of the feasibility system failed
};

// Diagnostic scan of both feasibility conditions: for non-matching edges
// y(b) - y(a) <= c(a,b), for matching edges y(a) - y(b) = c(a,b).
// Empty result == feasible.
std::vector<FeasibilityViolation> check_feasibility(const BipartiteGraph& g,
                                                    const MatchState& state);

// Shortest slack-weighted distances from the virtual source that feeds
// every free B vertex, over the residual orientation (non-matching edges
// b->a, matching edges a->b). Unreachable vertices sit at the `inf`
// sentinel, which is strictly larger than any distance the algorithm can
// use.
struct DijkstraResult {
    std::vector<int> dist_a;
    std::vector<int> dist_b;
    int inf = 0;
};

DijkstraResult residual_dijkstra(const BipartiteGraph& g, const MatchState& state);

// True when the zero-slack residual subgraph contains a path from a free
// B vertex to a free A vertex. BFS; ignores deletion stamps.
bool admissible_augmenting_path_exists(const BipartiteGraph& g, const MatchState& state);

// True when the zero-slack residual subgraph contains a directed cycle
// with at least one weight-1 edge (equivalently, a positive-weight
// admissible alternating cycle). Checked via strongly connected
// components; intended for small diagnostic instances.
bool admissible_positive_cycle_exists(const BipartiteGraph& g, const MatchState& state);

} // namespace zom
