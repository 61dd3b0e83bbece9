#pragma once

#include <functional>
#include <string>
#include <vector>

#include "zom/graph.hpp"
#include "zom/state.hpp"

namespace zom {

// Per-phase record: the stage-1 threshold, the common free-B dual after
// the update, and the augmenting paths found in stage 2 with their
// weights and affected-piece counts.
struct PhaseStats {
    int phase = 0;
    int ell = 0;
    int y_max = 0;
    int augmenting_paths = 0;
    long long affected_pieces = 0;          // sum of |K_l| over this phase's paths
    std::vector<int> path_weights;          // c(P_l)
    std::vector<int> path_affected;         // |K_l|
};

struct MatchResult {
    std::vector<int> mate_a;
    std::vector<int> mate_b;
    int matching_size = 0;
    int matching_weight = 0;                // realized w
    int preprocessed_size = 0;              // matching size after the piece-local pass
    int total_phases = 0;                   // lambda
    int total_augmenting_paths = 0;         // t
    long long total_affected = 0;           // sum |K_l|
    long long sum_path_weights = 0;         // sum c(P_l)
    std::vector<int> all_path_weights;      // c(P_l) in global discovery order
    std::vector<int> all_path_affected;     // |K_l| in global discovery order
    std::vector<int> dual_a;
    std::vector<int> dual_b;
    std::vector<PhaseStats> phases;
    std::vector<std::string> ledger_warnings;
};

enum class Stage { AfterPreprocess, AfterStage1, AfterStage2 };

struct MatcherOptions {
    // Cheap per-stage self checks: feasibility scan, free-vertex dual
    // invariants, path-weight identity at discovery.
    bool check_invariants = true;
    // Test hook, called between stages with the exposed state.
    std::function<void(Stage, const BipartiteGraph&, const MatchState&)> on_stage;
};

// Piece-local maximum matchings over weight-0 edges, duals all zero.
// No augmenting path survives inside a single piece afterwards.
MatchState preprocess(const BipartiteGraph& g, const PieceDecomposition& pieces);

struct Stage1Result {
    bool terminated = false;  // matching already maximum; duals untouched
    int ell = 0;              // min free-A distance (== dist.inf when unreachable)
    DijkstraResult dist;
};

// Dual adjustment: Dijkstra from the virtual source, then raise y(v) by
// ell - dist(v) for every vertex closer than ell. Leaves the state
// feasible with at least one all-admissible augmenting path.
Stage1Result stage1_dijkstra(const BipartiteGraph& g, MatchState& state);

// Multi-root DFS over the admissible graph with piece-aware deletion:
// a failed root deletes everything it visited; a successful root
// augments, then deletes its visited edges outside the affected pieces.
// `y_max` (the common free-B dual) is used for the path-weight check;
// pass -1 to derive it from the state.
PhaseStats stage2_dfs(const BipartiteGraph& g, MatchState& state,
                      const PieceDecomposition& pieces, int y_max = -1,
                      bool check_invariants = true);

// Augments along a path given as edge ids alternating non-matching /
// matching, from a free B vertex to a free A vertex. Applies the dual
// decrement y(b) -= 2*c(a,b) on the non-matching edges first, then flips
// the matching.
void augment(const BipartiteGraph& g, MatchState& state, const std::vector<int>& path_edges);

MatchResult run_matcher(const BipartiteGraph& g, const PieceDecomposition& pieces,
                        const MatcherOptions& options = {});

// Convenience overload: computes the piece decomposition in place.
MatchResult run_matcher(BipartiteGraph& g, const MatcherOptions& options = {});

} // namespace zom
