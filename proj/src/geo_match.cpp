#include "zom/geo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

namespace zom {

namespace {

int point_dual(const GeoState& st, bool b_side, int p) {
    return b_side ? st.dual_b[p] : st.dual_a[p];
}

} // namespace

CompactResidual build_compact(const GridIndex& grid, const GeoState& state) {
    CompactResidual cr;
    cr.a_clusters.resize(grid.cell_count());
    cr.b_clusters.resize(grid.cell_count());
    cr.cluster_of_a.assign(grid.pts.a.size(), -1);
    cr.cluster_of_b.assign(grid.pts.b.size(), -1);

    auto group = [&](int cell, bool b_side, const std::vector<int>& members,
                     std::vector<int>& cluster_list, std::vector<int>& cluster_of) {
        if (members.empty()) return;
        // Distinct dual values, largest first.
        std::vector<int> duals;
        for (int p : members) duals.push_back(point_dual(state, b_side, p));
        std::sort(duals.begin(), duals.end(), std::greater<int>());
        duals.erase(std::unique(duals.begin(), duals.end()), duals.end());

        int spread = duals.front() - duals.back();
        cr.max_spread = std::max(cr.max_spread, spread);
        cr.max_clusters = std::max(cr.max_clusters, (int)duals.size());
        if (spread > 2 || duals.size() > 3)
            throw invariant_error("cell dual spread " + std::to_string(spread) + " with " +
                                  std::to_string(duals.size()) + " clusters breaks the bound");

        for (int d : duals) {
            CompactVertex v;
            v.cell = cell;
            v.b_side = b_side;
            v.dual = d;
            for (int p : members)
                if (point_dual(state, b_side, p) == d) {
                    v.members.push_back(p);
                    bool free = b_side ? state.mate_b[p] == -1 : state.mate_a[p] == -1;
                    if (free) ++v.free_count;
                }
            int id = (int)cr.verts.size();
            cr.verts.push_back(std::move(v));
            cluster_list.push_back(id);
            for (int p : cr.verts[id].members) cluster_of[p] = id;
        }
    };

    for (int c = 0; c < grid.cell_count(); ++c) {
        group(c, false, grid.cell_a[c], cr.a_clusters[c], cr.cluster_of_a);
        group(c, true, grid.cell_b[c], cr.b_clusters[c], cr.cluster_of_b);
    }
    return cr;
}

namespace {

struct OutEdge {
    int to = -1;
    int weight = 0;
    int slack = 0;
};

// Directed compact edges leaving `u`, in deterministic order. Non-matching
// edges need a represented pair outside the matching; matching edges one
// inside it.
void out_edges(const GridIndex& grid, const CompactResidual& cr, const GeoState& st, int u,
               std::vector<OutEdge>& dst) {
    dst.clear();
    const CompactVertex& vu = cr.verts[u];
    if (vu.b_side) {
        for (int nb : grid.neighbors[vu.cell]) {
            int w = implicit_weight(grid, vu.cell, nb);
            for (int v : cr.a_clusters[nb]) {
                const CompactVertex& va = cr.verts[v];
                long long matched = 0;
                for (int b : vu.members) {
                    int mate = st.mate_b[b];
                    if (mate != -1 && cr.cluster_of_a[mate] == v) ++matched;
                }
                if (matched >= (long long)vu.members.size() * (long long)va.members.size())
                    continue;  // every represented pair is matched
                int s = w + va.dual - vu.dual;
                require(s >= 0, "negative compact slack: infeasible state");
                dst.push_back({v, w, s});
            }
        }
    } else {
        for (int a : vu.members) {
            int mate = st.mate_a[a];
            if (mate == -1) continue;
            int v = cr.cluster_of_b[mate];
            bool seen = false;
            for (const OutEdge& e : dst)
                if (e.to == v) {
                    seen = true;
                    break;
                }
            if (seen) continue;
            const CompactVertex& vb = cr.verts[v];
            int w = implicit_weight(grid, vu.cell, vb.cell);
            require(w - vu.dual + vb.dual == 0, "matching compact edge has nonzero slack");
            dst.push_back({v, w, 0});
        }
    }
}

} // namespace

std::vector<CompactEdge> compact_edges(const GridIndex& grid, const CompactResidual& cr,
                                       const GeoState& st) {
    std::vector<CompactEdge> all;
    std::vector<OutEdge> out;
    for (int u = 0; u < (int)cr.verts.size(); ++u) {
        out_edges(grid, cr, st, u, out);
        for (const OutEdge& e : out) all.push_back({u, e.to, e.weight, e.slack});
    }
    return all;
}

CompactDijkstraResult compact_dijkstra(const GridIndex& grid, const CompactResidual& cr,
                                       const GeoState& st) {
    const int max_key = (int)(grid.pts.a.size() + grid.pts.b.size());
    CompactDijkstraResult r;
    r.inf = max_key + 1;
    r.dist.assign(cr.verts.size(), r.inf);

    std::vector<std::vector<int>> buckets(max_key + 1);
    for (int v = 0; v < (int)cr.verts.size(); ++v)
        if (cr.verts[v].b_side && cr.verts[v].free_count > 0) {
            r.dist[v] = 0;
            buckets[0].push_back(v);
        }

    std::vector<OutEdge> out;
    for (int key = 0; key <= max_key; ++key) {
        for (std::size_t i = 0; i < buckets[key].size(); ++i) {
            int u = buckets[key][i];
            if (r.dist[u] != key) continue;
            out_edges(grid, cr, st, u, out);
            for (const OutEdge& e : out) {
                int nd = key + e.slack;
                if (nd <= max_key && nd < r.dist[e.to]) {
                    r.dist[e.to] = nd;
                    buckets[nd].push_back(e.to);
                }
            }
        }
        buckets[key].clear();
    }
    return r;
}

PointDijkstraResult point_residual_dijkstra(const GridIndex& grid, const GeoState& st) {
    const int n_a = (int)grid.pts.a.size(), n_b = (int)grid.pts.b.size();
    const int max_key = n_a + n_b;
    PointDijkstraResult r;
    r.inf = max_key + 1;
    r.dist_a.assign(n_a, r.inf);
    r.dist_b.assign(n_b, r.inf);

    std::vector<std::vector<std::pair<bool, int>>> buckets(max_key + 1);
    for (int b = 0; b < n_b; ++b)
        if (st.mate_b[b] == -1) {
            r.dist_b[b] = 0;
            buckets[0].push_back({true, b});
        }

    for (int key = 0; key <= max_key; ++key) {
        for (std::size_t i = 0; i < buckets[key].size(); ++i) {
            auto [is_b, p] = buckets[key][i];
            if (is_b) {
                if (r.dist_b[p] != key) continue;
                int cell = grid.cell_of_b[p];
                for (int nb : grid.neighbors[cell]) {
                    int w = implicit_weight(grid, cell, nb);
                    for (int a : grid.cell_a[nb]) {
                        if (st.mate_b[p] == a) continue;
                        int s = w + st.dual_a[a] - st.dual_b[p];
                        require(s >= 0, "negative point slack: infeasible state");
                        int nd = key + s;
                        if (nd <= max_key && nd < r.dist_a[a]) {
                            r.dist_a[a] = nd;
                            buckets[nd].push_back({false, a});
                        }
                    }
                }
            } else {
                if (r.dist_a[p] != key) continue;
                int mate = st.mate_a[p];
                if (mate != -1 && key < r.dist_b[mate]) {
                    r.dist_b[mate] = key;
                    buckets[key].push_back({true, mate});
                }
            }
        }
        buckets[key].clear();
    }
    return r;
}

GeoState geo_preprocess(const GridIndex& grid) {
    GeoState st;
    st.mate_a.assign(grid.pts.a.size(), -1);
    st.mate_b.assign(grid.pts.b.size(), -1);
    st.dual_a.assign(grid.pts.a.size(), 0);
    st.dual_b.assign(grid.pts.b.size(), 0);

    std::map<std::pair<int, int>, std::vector<int>> boxes;
    for (int c = 0; c < grid.cell_count(); ++c) boxes[grid.box_of[c]].push_back(c);

    for (auto& [box, cells] : boxes) {
        std::vector<int> a_pts, b_pts;
        for (int c : cells) {
            a_pts.insert(a_pts.end(), grid.cell_a[c].begin(), grid.cell_a[c].end());
            b_pts.insert(b_pts.end(), grid.cell_b[c].begin(), grid.cell_b[c].end());
        }
        if (a_pts.empty() || b_pts.empty()) continue;
        std::vector<int> a_local(grid.pts.a.size(), -1), b_local(grid.pts.b.size(), -1);
        for (int i = 0; i < (int)a_pts.size(); ++i) a_local[a_pts[i]] = i;
        for (int i = 0; i < (int)b_pts.size(); ++i) b_local[b_pts[i]] = i;

        // Weight-0 edges of the box: neighborhood cell pairs inside it.
        std::vector<EdgeInput> edges;
        for (int c : cells) {
            for (int nb : grid.neighbors[c]) {
                if (nb < c || grid.box_of[nb] != box) continue;
                for (int a : grid.cell_a[c])
                    for (int b : grid.cell_b[nb]) edges.push_back({a_local[a], b_local[b], 0});
                if (nb != c)
                    for (int a : grid.cell_a[nb])
                        for (int b : grid.cell_b[c]) edges.push_back({a_local[a], b_local[b], 0});
            }
        }
        BipartiteGraph local = build_graph((int)a_pts.size(), (int)b_pts.size(), edges);
        Matching m = hopcroft_karp(local);
        for (int i = 0; i < (int)a_pts.size(); ++i)
            if (m.mate_a[i] != -1) {
                st.mate_a[a_pts[i]] = b_pts[m.mate_a[i]];
                st.mate_b[b_pts[m.mate_a[i]]] = a_pts[i];
            }
    }
    return st;
}

namespace {

// Feasibility scan over the whole induced graph; diagnostic only.
void geo_check_feasibility(const GridIndex& grid, const GeoState& st) {
    for (int c = 0; c < grid.cell_count(); ++c) {
        for (int nb : grid.neighbors[c]) {
            int w = implicit_weight(grid, c, nb);
            for (int a : grid.cell_a[c])
                for (int b : grid.cell_b[nb]) {
                    if (st.mate_a[a] == b)
                        require(st.dual_a[a] - st.dual_b[b] == w,
                                "matched geo pair violates the equality condition");
                    else
                        require(st.dual_b[b] - st.dual_a[a] <= w,
                                "geo pair violates the slack condition");
                }
        }
    }
}

struct GeoEngine {
    const GridIndex& grid;
    const GeoOptions& opts;
    GeoState st;
    CompactResidual cr;
    int y_max = 0;
    GeoRunResult& result;

    // Point-edge deletion stamps for the current phase: (b, a) pairs the
    // DFS discipline has proven dead.
    std::unordered_set<std::uint64_t> deleted;

    GeoEngine(const GridIndex& g, const GeoOptions& o, GeoState s, GeoRunResult& res)
        : grid(g), opts(o), st(std::move(s)), result(res) {}

    static std::uint64_t pair_key(int b, int a) {
        return (std::uint64_t)(std::uint32_t)b << 32 | (std::uint32_t)a;
    }

    void rebuild() {
        cr = build_compact(grid, st);
        result.max_clusters = std::max(result.max_clusters, cr.max_clusters);
        result.max_spread = std::max(result.max_spread, cr.max_spread);
    }

    int matching_size() const {
        int n = 0;
        for (int m : st.mate_a)
            if (m != -1) ++n;
        return n;
    }

    // Dual adjustment from compact distances. Matched B points take their
    // mate's label so that matched pairs move together; a cluster's
    // distance is the best among its members, which is exactly what the
    // compact edges encode.
    bool stage1() {
        rebuild();
        CompactDijkstraResult d = compact_dijkstra(grid, cr, st);
        bool free_a = false, free_b = false;
        int ell = d.inf;
        for (int v = 0; v < (int)cr.verts.size(); ++v) {
            const CompactVertex& cv = cr.verts[v];
            if (cv.free_count == 0) continue;
            if (cv.b_side)
                free_b = true;
            else {
                free_a = true;
                ell = std::min(ell, d.dist[v]);
            }
        }
        if (!free_a || !free_b || ell == d.inf) return false;
        require(ell >= 1, "geo stage-1 threshold below 1");

        auto label_a = [&](int a) { return d.dist[cr.cluster_of_a[a]]; };
        for (int a = 0; a < (int)st.dual_a.size(); ++a) {
            int l = label_a(a);
            if (l < ell) st.dual_a[a] += ell - l;
        }
        for (int b = 0; b < (int)st.dual_b.size(); ++b) {
            int l = st.mate_b[b] == -1 ? 0 : label_a(st.mate_b[b]);
            if (l < ell) st.dual_b[b] += ell - l;
        }
        y_max += ell;
        result.phases.push_back({});
        result.phases.back().phase = (int)result.phases.size();
        result.phases.back().ell = ell;
        result.phases.back().y_max = y_max;
        rebuild();
        if (opts.check_invariants) geo_check_feasibility(grid, st);
        return true;
    }

    long long box_token(int cell) const {
        auto box = grid.box_of[cell];
        return (long long)box.first << 32 ^ (unsigned)box.second;
    }

    void augment_points(const std::vector<int>& pts, PhaseStats& ps) {
        int weight = 0;
        std::unordered_set<long long> affected;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            int cu = i % 2 == 0 ? grid.cell_of_b[pts[i]] : grid.cell_of_a[pts[i]];
            int cv = i % 2 == 0 ? grid.cell_of_a[pts[i + 1]] : grid.cell_of_b[pts[i + 1]];
            int w = implicit_weight(grid, cu, cv);
            weight += w;
            if (w == 0) affected.insert(box_token(cu));
        }
        if (opts.check_invariants)
            require(weight == y_max, "geo path weight differs from the free-B dual");

        // Dual decrement on the non-matching hops, then flip.
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            int b = pts[i], a = pts[i + 1];
            require(st.mate_b[b] != a, "augmenting path hop already matched");
            int w = implicit_weight(grid, grid.cell_of_b[b], grid.cell_of_a[a]);
            require(w + st.dual_a[a] - st.dual_b[b] == 0, "augmenting path hop has slack");
            st.dual_b[b] -= 2 * w;
        }
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
            st.mate_a[pts[i + 1]] = pts[i];
            st.mate_b[pts[i]] = pts[i + 1];
        }
        for (std::size_t i = 0; i + 1 < pts.size(); i += 2)
            require(st.dual_a[pts[i + 1]] - st.dual_b[pts[i]] ==
                        implicit_weight(grid, grid.cell_of_a[pts[i + 1]], grid.cell_of_b[pts[i]]),
                    "new geo matching edge violates the equality condition");

        ++ps.augmenting_paths;
        ps.path_weights.push_back(weight);
        ps.path_affected.push_back((int)affected.size());
        ps.affected_pieces += (long long)affected.size();
        result.sum_path_weights += weight;
        result.total_affected += (long long)affected.size();
        ++result.total_augmenting_paths;

        // Visited edges outside the affected boxes are dropped for the
        // phase; the final path's edges were never marked (backtrack
        // marking), so its weight-1 edges survive.
        for (const auto& [key, w, box] : visited_list) {
            bool keep = w == 0 && affected.count(box);
            if (!keep) deleted.insert(key);
        }
    }

    struct Frame {
        int vertex;                  // point id; B at even depth, A at odd
        std::vector<int> out;        // candidate partners (A points for B frames)
        std::size_t cursor = 0;
        std::uint64_t in_key = 0;
        int in_weight = 0;
    };

    std::vector<std::tuple<std::uint64_t, int, long long>> visited_list;  // key, weight, box
    std::unordered_set<std::uint64_t> visited_set;

    void mark_visited(std::uint64_t key, int weight, long long box) {
        if (!visited_set.insert(key).second) return;
        visited_list.push_back({key, weight, box});
    }

    // Admissible out-partners of a B point, in deterministic cell order.
    void b_out(int b, std::vector<int>& dst) const {
        dst.clear();
        int cell = grid.cell_of_b[b];
        for (int nb : grid.neighbors[cell]) {
            int w = implicit_weight(grid, cell, nb);
            for (int a : grid.cell_a[nb]) {
                if (st.mate_b[b] == a) continue;
                if (w + st.dual_a[a] - st.dual_b[b] != 0) continue;
                dst.push_back(a);
            }
        }
    }

    // Multi-root DFS over the admissible point graph, marking edges
    // visited on backtrack so the final path stays unmarked.
    bool dfs(int root_b, PhaseStats& ps, std::vector<char>& on_path_a,
             std::vector<char>& on_path_b) {
        visited_list.clear();
        visited_set.clear();

        std::vector<Frame> frames;
        frames.push_back({root_b, {}, 0, 0, 0});
        b_out(root_b, frames.back().out);
        on_path_b[root_b] = 1;

        while (!frames.empty()) {
            Frame& f = frames.back();
            const bool at_b = frames.size() % 2 == 1;

            if (at_b) {
                int b = f.vertex;
                int a = -1;
                while (f.cursor < f.out.size()) {
                    int cand = f.out[f.cursor++];
                    std::uint64_t key = pair_key(b, cand);
                    if (deleted.count(key) || visited_set.count(key)) continue;
                    if (on_path_a[cand]) continue;  // skipped, not marked
                    a = cand;
                    break;
                }
                if (a == -1) {
                    on_path_b[b] = 0;
                    std::uint64_t in_key = f.in_key;
                    int in_weight = f.in_weight;
                    long long box = box_token(grid.cell_of_b[b]);
                    frames.pop_back();
                    if (frames.empty()) {
                        for (const auto& [k, w, bx] : visited_list) deleted.insert(k);
                        return false;
                    }
                    mark_visited(in_key, in_weight, box);
                    continue;
                }
                int w = implicit_weight(grid, grid.cell_of_b[b], grid.cell_of_a[a]);
                if (st.mate_a[a] == -1) {
                    std::vector<int> pts;
                    for (const Frame& fr : frames) pts.push_back(fr.vertex);
                    pts.push_back(a);
                    on_path_b[root_b] = 0;
                    for (std::size_t i = 1; i < frames.size(); ++i)
                        (i % 2 == 1 ? on_path_a : on_path_b)[frames[i].vertex] = 0;
                    augment_points(pts, ps);
                    return true;
                }
                frames.push_back({a, {}, 0, pair_key(b, a), w});
                on_path_a[a] = 1;
            } else {
                int a = f.vertex;
                int b = st.mate_a[a];
                // The only residual edge out of a matched A point is its
                // matching edge; one shot per visit.
                if (f.cursor == 0 && b != -1 && !on_path_b[b]) {
                    std::uint64_t key = pair_key(b, a) | (1ULL << 63);  // matched direction
                    if (!deleted.count(key) && !visited_set.count(key)) {
                        ++f.cursor;
                        int w = implicit_weight(grid, grid.cell_of_b[b], grid.cell_of_a[a]);
                        frames.push_back({b, {}, 0, key, w});
                        b_out(b, frames.back().out);
                        on_path_b[b] = 1;
                        continue;
                    }
                }
                on_path_a[a] = 0;
                std::uint64_t in_key = f.in_key;
                int in_weight = f.in_weight;
                long long box = box_token(grid.cell_of_a[a]);
                frames.pop_back();
                mark_visited(in_key, in_weight, box);
            }
        }
        return false;
    }

    void stage2() {
        deleted.clear();
        PhaseStats& ps = result.phases.back();
        std::vector<int> roots;
        for (int b = 0; b < (int)st.mate_b.size(); ++b)
            if (st.mate_b[b] == -1) roots.push_back(b);
        std::vector<char> on_path_a(st.mate_a.size(), 0), on_path_b(st.mate_b.size(), 0);
        for (int b : roots) {
            if (st.mate_b[b] != -1) continue;
            dfs(b, ps, on_path_a, on_path_b);
        }
        require(ps.augmenting_paths >= 1, "geo phase completed without an augmenting path");
        if (opts.check_invariants) geo_check_feasibility(grid, st);
    }
};

double matching_bottleneck(const PointSet& pts, const std::vector<int>& mate_a) {
    double worst2 = 0;
    for (int a = 0; a < (int)mate_a.size(); ++a)
        if (mate_a[a] != -1) worst2 = std::max(worst2, squared_dist(pts.a[a], pts.b[mate_a[a]]));
    return std::sqrt(worst2);
}

} // namespace

GeoRunResult geo_match(const PointSet& points, double delta, double eps, int r,
                       const GeoOptions& options) {
    GridIndex grid = build_grid(points, delta, eps, r);
    GeoRunResult result;
    result.delta = delta;

    GeoEngine engine(grid, options, geo_preprocess(grid), result);
    engine.rebuild();
    if (options.check_invariants) geo_check_feasibility(grid, engine.st);
    if (options.on_phase) options.on_phase(0, grid, engine.st);

    const int phase_cap = (int)(points.a.size() + points.b.size()) + 2;
    while (engine.stage1()) {
        require((int)result.phases.size() <= phase_cap, "geo phase cap exceeded");
        engine.stage2();
        if (options.on_phase) options.on_phase((int)result.phases.size(), grid, engine.st);
    }

    result.total_phases = (int)result.phases.size();
    int n = (int)points.a.size();
    result.perfect = (int)points.b.size() == n && engine.matching_size() == n;
    result.bottleneck = matching_bottleneck(grid.pts, engine.st.mate_a);
    for (int a = 0; a < (int)engine.st.mate_a.size(); ++a)
        if (engine.st.mate_a[a] != -1)
            result.matching_weight += implicit_weight(grid, grid.cell_of_a[a],
                                                      grid.cell_of_b[engine.st.mate_a[a]]);
    result.state = std::move(engine.st);
    return result;
}

BottleneckResult bottleneck_match(const PointSet& points, double eps, const GeoOptions& options) {
    const int n = (int)points.a.size();
    if ((int)points.b.size() != n) throw input_error("bottleneck matching needs |A| = |B|");
    BottleneckResult out;
    if (n == 0) return out;

    std::vector<double> ladder = delta_candidates(points, eps);
    if (ladder.size() == 1 && ladder[0] == 0.0) {
        // Coincident multisets: pair identical coordinates directly.
        std::map<std::pair<double, double>, std::vector<int>> pool;
        for (int b = 0; b < n; ++b) pool[{points.b[b].x, points.b[b].y}].push_back(b);
        out.mate_a.assign(n, -1);
        for (int a = 0; a < n; ++a) {
            auto& bucket = pool[{points.a[a].x, points.a[a].y}];
            require(!bucket.empty(), "coincident pairing ran dry");
            out.mate_a[a] = bucket.back();
            bucket.pop_back();
        }
        out.bottleneck = 0;
        out.winning_delta = 0;
        out.r = options.r > 0 ? options.r : default_grid_r(n);
        return out;
    }

    out.r = options.r > 0 ? options.r : default_grid_r(n);
    int best = -1;
    for (double delta : ladder) {
        out.rungs.push_back(geo_match(points, delta, eps, out.r, options));
        const GeoRunResult& run = out.rungs.back();
        if (run.perfect && (best == -1 || run.bottleneck < out.rungs[best].bottleneck))
            best = (int)out.rungs.size() - 1;
    }
    require(best != -1, "no ladder rung produced a perfect matching");
    out.mate_a = out.rungs[best].state.mate_a;
    out.bottleneck = out.rungs[best].bottleneck;
    out.winning_delta = out.rungs[best].delta;
    return out;
}

} // namespace zom
