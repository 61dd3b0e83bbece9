#include "zom/gen.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "zom/rng.hpp"

namespace zom {

BipartiteGraph gen_random_graph(std::uint64_t seed, int n_a, int n_b, int m, double p1) {
    if (n_a < 1 || n_b < 1) throw input_error("need at least one vertex per side");
    Rng rng(seed);
    const long long max_edges = (long long)n_a * n_b;
    m = (int)std::min<long long>(m, max_edges);
    std::set<std::pair<int, int>> used;
    std::vector<EdgeInput> edges;
    while ((int)edges.size() < m) {
        int a = rng.range(0, n_a - 1);
        int b = rng.range(0, n_b - 1);
        if (!used.insert({a, b}).second) continue;
        edges.push_back({a, b, rng.chance(p1) ? 1 : 0});
    }
    return build_graph(n_a, n_b, edges);
}

BipartiteGraph gen_lattice(int rows, int cols) {
    if (rows < 1 || cols < 1) throw input_error("lattice needs positive dimensions");
    auto side_of = [](int r, int c) { return (r + c) % 2; };
    std::vector<int> local(rows * cols);
    int n_a = 0, n_b = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            local[r * cols + c] = side_of(r, c) == 0 ? n_a++ : n_b++;

    std::vector<EdgeInput> edges;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) {
                int u = r * cols + c, v = r * cols + c + 1;
                if (side_of(r, c) == 0)
                    edges.push_back({local[u], local[v], 0});
                else
                    edges.push_back({local[v], local[u], 0});
            }
            if (r + 1 < rows) {
                int u = r * cols + c, v = (r + 1) * cols + c;
                if (side_of(r, c) == 0)
                    edges.push_back({local[u], local[v], 0});
                else
                    edges.push_back({local[v], local[u], 0});
            }
        }
    BipartiteGraph g = build_graph(n_a, n_b, edges);
    g.coords.resize(rows * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            int v = local[r * cols + c] + (side_of(r, c) == 0 ? 0 : n_a);
            g.coords[v] = {c, r};
        }
    return g;
}

PointDistribution point_distribution_from(const std::string& name) {
    if (name == "uniform") return PointDistribution::Uniform;
    if (name == "clustered") return PointDistribution::Clustered;
    throw input_error("unknown point distribution: " + name);
}

PointSet gen_points(std::uint64_t seed, int n_per_side, PointDistribution dist) {
    if (n_per_side < 0) throw input_error("negative point count");
    Rng rng(seed);
    PointSet ps;
    if (dist == PointDistribution::Clustered) {
        int k = std::max(1, n_per_side / 16);
        std::vector<Point> centers;
        for (int i = 0; i < k; ++i) centers.push_back({rng.uniform(), rng.uniform()});
        auto sample = [&]() {
            const Point& c = centers[rng.below(centers.size())];
            return Point{c.x + (rng.uniform() - 0.5) * 0.05, c.y + (rng.uniform() - 0.5) * 0.05};
        };
        for (int i = 0; i < n_per_side; ++i) ps.a.push_back(sample());
        for (int i = 0; i < n_per_side; ++i) ps.b.push_back(sample());
    } else {
        for (int i = 0; i < n_per_side; ++i) ps.a.push_back({rng.uniform(), rng.uniform()});
        for (int i = 0; i < n_per_side; ++i) ps.b.push_back({rng.uniform(), rng.uniform()});
    }
    return ps;
}

} // namespace zom
