#include "zom/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zom {

namespace {

struct HkSolver {
    const BipartiteGraph& g;
    const EdgeFilter& filter;
    std::vector<int> mate_a, mate_b, layer;
    std::vector<std::size_t> cursor;
    static constexpr int kInf = std::numeric_limits<int>::max();

    HkSolver(const BipartiteGraph& gg, const EdgeFilter& f)
        : g(gg), filter(f), mate_a(gg.n_a, -1), mate_b(gg.n_b, -1), layer(gg.n_a, kInf),
          cursor(gg.n_a, 0) {}

    bool pass(int eid) const { return !filter || filter(eid); }

    // Layers free A vertices at 0 and alternates matched/unmatched edges;
    // returns false once no free B vertex is reachable.
    bool bfs() {
        std::vector<int> queue;
        for (int a = 0; a < g.n_a; ++a) {
            layer[a] = mate_a[a] == -1 ? 0 : kInf;
            if (layer[a] == 0) queue.push_back(a);
        }
        bool reached_free_b = false;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int a = queue[i];
            for (int eid : g.adj_a[a]) {
                if (!pass(eid)) continue;
                int b = g.edges[eid].b;
                int a2 = mate_b[b];
                if (a2 == -1) {
                    reached_free_b = true;
                } else if (layer[a2] == kInf) {
                    layer[a2] = layer[a] + 1;
                    queue.push_back(a2);
                }
            }
        }
        return reached_free_b;
    }

    bool dfs(int a) {
        for (std::size_t& i = cursor[a]; i < g.adj_a[a].size();) {
            int eid = g.adj_a[a][i++];
            if (!pass(eid)) continue;
            int b = g.edges[eid].b;
            int a2 = mate_b[b];
            if (a2 == -1 || (layer[a2] == layer[a] + 1 && dfs(a2))) {
                mate_a[a] = b;
                mate_b[b] = a;
                return true;
            }
        }
        layer[a] = kInf;
        return false;
    }

    Matching solve() {
        int size = 0;
        while (bfs()) {
            std::fill(cursor.begin(), cursor.end(), 0);
            for (int a = 0; a < g.n_a; ++a)
                if (mate_a[a] == -1 && dfs(a)) ++size;
        }
        return Matching{std::move(mate_a), std::move(mate_b), size};
    }
};

} // namespace

Matching hopcroft_karp(const BipartiteGraph& g, const EdgeFilter& filter) {
    return HkSolver(g, filter).solve();
}

namespace {

// One augmenting-path probe for the brute-force matcher.
bool kuhn_augment(const BipartiteGraph& g, int a, std::vector<int>& mate_a,
                  std::vector<int>& mate_b, std::vector<char>& used) {
    for (int eid : g.adj_a[a]) {
        int b = g.edges[eid].b;
        if (used[b]) continue;
        used[b] = 1;
        if (mate_b[b] == -1 || kuhn_augment(g, mate_b[b], mate_a, mate_b, used)) {
            mate_a[a] = b;
            mate_b[b] = a;
            return true;
        }
    }
    return false;
}

} // namespace

OracleResult brute_force_max_matching(const BipartiteGraph& g) {
    OracleResult out;
    out.size_warning = g.num_vertices() > 200;

    std::vector<int> mate_a(g.n_a, -1), mate_b(g.n_b, -1);
    std::vector<char> used(g.n_b, 0);
    for (int a = 0; a < g.n_a; ++a) {
        std::fill(used.begin(), used.end(), 0);
        if (kuhn_augment(g, a, mate_a, mate_b, used)) ++out.matching_size;
    }
    for (int a = 0; a < g.n_a; ++a)
        if (mate_a[a] != -1) out.matching.push_back({a, mate_a[a]});

    // Koenig cover: alternate from free A vertices (unmatched edges
    // forward, matched edges back); cover = unreached A + reached B.
    std::vector<char> reach_a(g.n_a, 0), reach_b(g.n_b, 0);
    std::vector<int> queue;
    for (int a = 0; a < g.n_a; ++a)
        if (mate_a[a] == -1) {
            reach_a[a] = 1;
            queue.push_back(a);
        }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int a = queue[i];
        for (int eid : g.adj_a[a]) {
            int b = g.edges[eid].b;
            if (mate_a[a] == b || reach_b[b]) continue;
            reach_b[b] = 1;
            int a2 = mate_b[b];
            if (a2 != -1 && !reach_a[a2]) {
                reach_a[a2] = 1;
                queue.push_back(a2);
            }
        }
    }
    for (int a = 0; a < g.n_a; ++a)
        if (!reach_a[a]) out.cover.push_back(g.global_a(a));
    for (int b = 0; b < g.n_b; ++b)
        if (reach_b[b]) out.cover.push_back(g.global_b(b));
    return out;
}

double squared_dist(const Point& p, const Point& q) {
    double dx = p.x - q.x, dy = p.y - q.y;
    return dx * dx + dy * dy;
}

double dist(const Point& p, const Point& q) { return std::sqrt(squared_dist(p, q)); }

BottleneckOracleResult oracle_bottleneck(const PointSet& points) {
    const int n = (int)points.a.size();
    if ((int)points.b.size() != n)
        throw input_error("bottleneck oracle needs |A| = |B|");
    if (n == 0) return {0.0, 0.0, {}};

    std::vector<double> d2;
    d2.reserve((std::size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d2.push_back(squared_dist(points.a[i], points.b[j]));
    std::sort(d2.begin(), d2.end());
    d2.erase(std::unique(d2.begin(), d2.end()), d2.end());

    std::vector<EdgeInput> all;
    all.reserve((std::size_t)n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) all.push_back({i, j, 0});
    BipartiteGraph g = build_graph(n, n, all);

    auto feasible = [&](double t2) {
        EdgeFilter f = [&, t2](int eid) {
            const Edge& e = g.edges[eid];
            return squared_dist(points.a[e.a], points.b[e.b]) <= t2;
        };
        return hopcroft_karp(g, f);
    };

    int lo = 0, hi = (int)d2.size() - 1;  // feasible at the diameter
    while (lo < hi) {
        int mid = lo + (hi - lo) / 2;
        if (feasible(d2[mid]).size == n)
            hi = mid;
        else
            lo = mid + 1;
    }
    Matching witness = feasible(d2[lo]);
    require(witness.size == n, "bottleneck oracle lost its witness matching");
    return {std::sqrt(d2[lo]), d2[lo], std::move(witness.mate_a)};
}

} // namespace zom
