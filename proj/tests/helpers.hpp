#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "zom/baseline.hpp"
#include "zom/graph.hpp"
#include "zom/rng.hpp"

namespace zom::testing {

// Random simple bipartite instance with weight-1 probability p1.
inline BipartiteGraph random_graph(Rng& rng, int n_a, int n_b, int m, double p1) {
    std::set<std::pair<int, int>> used;
    std::vector<EdgeInput> edges;
    const long long max_edges = (long long)n_a * n_b;
    m = (int)std::min<long long>(m, max_edges);
    while ((int)edges.size() < m) {
        int a = rng.range(0, n_a - 1);
        int b = rng.range(0, n_b - 1);
        if (!used.insert({a, b}).second) continue;
        edges.push_back({a, b, rng.chance(p1) ? 1 : 0});
    }
    return build_graph(n_a, n_b, edges);
}

inline PointSet random_points(Rng& rng, int n, bool clustered) {
    PointSet ps;
    if (clustered) {
        int k = std::max(1, n / 16);
        std::vector<Point> centers;
        for (int i = 0; i < k; ++i) centers.push_back({rng.uniform(), rng.uniform()});
        auto sample = [&]() {
            const Point& c = centers[rng.below(centers.size())];
            return Point{c.x + (rng.uniform() - 0.5) * 0.05, c.y + (rng.uniform() - 0.5) * 0.05};
        };
        for (int i = 0; i < n; ++i) ps.a.push_back(sample());
        for (int i = 0; i < n; ++i) ps.b.push_back(sample());
    } else {
        for (int i = 0; i < n; ++i) ps.a.push_back({rng.uniform(), rng.uniform()});
        for (int i = 0; i < n; ++i) ps.b.push_back({rng.uniform(), rng.uniform()});
    }
    return ps;
}

// Independent piece oracle: plain union-find over weight-0 edges.
struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void merge(int x, int y) { parent[find(x)] = find(y); }
};

inline std::vector<int> union_find_pieces(const BipartiteGraph& g) {
    UnionFind uf(g.num_vertices());
    for (const Edge& e : g.edges)
        if (e.w == 0) uf.merge(g.global_a(e.a), g.global_b(e.b));
    std::vector<int> root(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) root[v] = uf.find(v);
    return root;
}

// True when two labelings induce the same partition of vertices.
inline bool same_partition(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) return false;
    std::set<std::pair<int, int>> fwd, bwd;
    for (std::size_t i = 0; i < x.size(); ++i) {
        fwd.insert({x[i], y[i]});
        bwd.insert({y[i], x[i]});
    }
    std::set<int> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    return fwd.size() == xs.size() && bwd.size() == ys.size();
}

} // namespace zom::testing
