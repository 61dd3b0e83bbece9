#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "zom/baseline.hpp"
#include "zom/matcher.hpp"

namespace zom {

struct CellKey {
    int x = 0;
    int y = 0;
    bool operator==(const CellKey&) const = default;
};

// Uniform grid over the bounding square of A u B with cell side
// eps*delta/(6*sqrt(2)), plus the shifted coarse grid that partitions the
// cells into boxes. Neighborhoods are kept over active cells only; the
// membership rule (min cell distance <= delta, inclusive) is what matters.
struct GridIndex {
    double delta = 0;
    double eps = 0;
    double cell_side = 0;
    int r = 0;
    int sqrt_r = 0;
    double origin_x = 0, origin_y = 0;
    double square_side = 0;
    int kappa_v = 1, kappa_h = 1;

    PointSet pts;

    std::vector<CellKey> cell_keys;              // active cells, sorted
    std::vector<std::vector<int>> cell_a;        // A-point ids per active cell
    std::vector<std::vector<int>> cell_b;
    std::vector<int> cell_of_a, cell_of_b;       // point -> active cell index
    std::vector<std::vector<int>> neighbors;     // active neighbors (includes self)
    std::vector<std::pair<int, int>> box_of;     // coarse-grid box per active cell
    std::vector<char> boundary_cell;             // within delta of its box boundary

    int cell_count() const { return (int)cell_keys.size(); }
    CellKey key_of(const Point& p) const;
    int cell_index(CellKey key) const;           // -1 when inactive
    // Min distance between the closed cell squares, squared.
    double min_cell_dist2(CellKey u, CellKey v) const;
    bool within_delta(CellKey u, CellKey v) const;
};

// Geometric ladder of bottleneck guesses at ratio (1+eps/3), from the
// nearest-neighbor lower bound to the diameter. A coincident instance
// degenerates to the single guess 0.
std::vector<double> delta_candidates(const PointSet& points, double eps);

GridIndex build_grid(const PointSet& points, double delta, double eps, int r);

// Per-axis shift counts and the argmin selection used by build_grid;
// exposed for the averaging-bound checks. Axis 0 = vertical lines.
std::vector<long long> shift_boundary_counts(const GridIndex& grid, int axis);
std::pair<int, int> choose_shift(const GridIndex& grid);

// 1 when the two cells lie in different boxes of the shifted grid; never
// materialized per edge.
int implicit_weight(const GridIndex& grid, int cell_i, int cell_j);

// Point-level matching state of a geometric run.
struct GeoState {
    std::vector<int> mate_a, mate_b;
    std::vector<int> dual_a, dual_b;
};

struct CompactVertex {
    int cell = 0;
    bool b_side = false;
    int dual = 0;
    std::vector<int> members;   // side-local point ids
    int free_count = 0;
};

// Cell-and-cluster quotient of the residual network: per active cell and
// side, one vertex per distinct dual value (at most three), edges derived
// on demand from neighborhoods and the matching.
struct CompactResidual {
    std::vector<CompactVertex> verts;
    std::vector<std::vector<int>> a_clusters;   // per cell, vert ids sorted by dual desc
    std::vector<std::vector<int>> b_clusters;
    std::vector<int> cluster_of_a, cluster_of_b;  // point -> vert id
    int max_clusters = 0;   // largest per-cell per-side cluster count seen
    int max_spread = 0;     // largest per-cell per-side dual spread seen
};

// Validates the dual-spread bound (<= 2) and cluster count (<= 3) while
// grouping; violations raise invariant_error.
CompactResidual build_compact(const GridIndex& grid, const GeoState& state);

struct CompactEdge {
    int from = 0;
    int to = 0;
    int weight = 0;
    int slack = 0;
};

// Materialized directed edge list of the compact residual network.
std::vector<CompactEdge> compact_edges(const GridIndex& grid, const CompactResidual& compact,
                                       const GeoState& state);

// Shortest slack distances from the virtual source feeding free B
// clusters. dist[v] indexes CompactResidual::verts; inf = sentinel.
struct CompactDijkstraResult {
    std::vector<int> dist;
    int inf = 0;
};
CompactDijkstraResult compact_dijkstra(const GridIndex& grid, const CompactResidual& compact,
                                       const GeoState& state);

// Point-level reference Dijkstra over the full induced graph; the
// equivalence oracle for the compact network.
struct PointDijkstraResult {
    std::vector<int> dist_a, dist_b;
    int inf = 0;
};
PointDijkstraResult point_residual_dijkstra(const GridIndex& grid, const GeoState& state);

// Box-local maximum matchings over the weight-0 edges, duals all zero.
GeoState geo_preprocess(const GridIndex& grid);

struct GeoOptions {
    bool check_invariants = true;
    int r = -1;  // coarse-grid parameter; -1 = perfect square near n^(2/3)
    // Called after preprocessing (phase 0) and after every completed phase.
    std::function<void(int phase, const GridIndex&, const GeoState&)> on_phase;
};

struct GeoRunResult {
    bool perfect = false;
    double delta = 0;
    GeoState state;
    int total_phases = 0;
    int total_augmenting_paths = 0;
    long long total_affected = 0;
    long long sum_path_weights = 0;
    int matching_weight = 0;            // realized 0/1 weight of the matching
    double bottleneck = 0;              // longest matched edge (0 when empty)
    int max_clusters = 0;               // across all exposed states
    int max_spread = 0;
    std::vector<PhaseStats> phases;
};

// One run of the phase matcher on the compact residual network for a
// fixed guess delta. Returns with perfect=false when the guess is below
// the bottleneck distance.
GeoRunResult geo_match(const PointSet& points, double delta, double eps, int r,
                       const GeoOptions& options = {});

struct BottleneckResult {
    std::vector<int> mate_a;
    double bottleneck = 0;
    double winning_delta = 0;
    int r = 0;
    std::vector<GeoRunResult> rungs;
};

// Full sweep: one geo_match per ladder rung, returning the perfect
// matching with the smallest realized bottleneck.
BottleneckResult bottleneck_match(const PointSet& points, double eps,
                                  const GeoOptions& options = {});

int default_grid_r(int n);

} // namespace zom
