#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "zom/baseline.hpp"
#include "zom/matcher.hpp"
#include "zom/separator.hpp"

using namespace zom;

namespace {

// rows x cols lattice: vertices are sites, edges join orthogonal
// neighbors, parts by checkerboard parity. Global id = row * cols + col
// reindexed per side.
BipartiteGraph lattice_graph(int rows, int cols) {
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

} // namespace

TEST_CASE("graphs below the size threshold stay all-zero") {
    BipartiteGraph g = lattice_graph(3, 3);
    WeightAssignment wa = assign_weights_recursive(g, 9, grid_graph_separator);
    CHECK(wa.steps == 0);
    for (int w : wa.weight) CHECK(w == 0);
}

TEST_CASE("path graph splits at the midpoints") {
    // 1x16 path, r=4: three cuts (root, then each half), each cut vertex
    // contributing its two incident edges as weight 1.
    BipartiteGraph g = lattice_graph(1, 16);
    WeightAssignment wa = assign_weights_recursive(g, 4, grid_graph_separator);
    CHECK(wa.steps == 3);

    BipartiteGraph weighted = reweighted(g, wa.weight);
    PieceDecomposition pd = compute_pieces(weighted);
    CHECK(pd.max_piece_vertices <= 4);

    int ones = 0;
    for (int w : wa.weight) ones += w;
    CHECK(ones == 6);
}

TEST_CASE("grid separator splits a 4x4 lattice as the median column") {
    BipartiteGraph g = lattice_graph(4, 4);
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    SeparatorStep step = grid_graph_separator(g, all);
    CHECK(step.separator.size() <= 5);
    CHECK(std::min(step.side_x.size(), step.side_y.size()) >= 4);
    CHECK(std::max(step.side_x.size(), step.side_y.size()) <= 8);
}

TEST_CASE("grid separator on a path picks a single vertex") {
    BipartiteGraph g = lattice_graph(1, 9);
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    SeparatorStep step = grid_graph_separator(g, all);
    CHECK(step.separator.size() == 1);
}

TEST_CASE("grid separator separates random induced sublattices") {
    Rng rng(71);
    for (int it = 0; it < 20; ++it) {
        BipartiteGraph g = lattice_graph(8, 8);
        std::vector<int> vertices;
        for (int v = 0; v < g.num_vertices(); ++v)
            if (rng.chance(0.8)) vertices.push_back(v);
        if (vertices.size() < 4) continue;
        SeparatorStep step = grid_graph_separator(g, vertices);

        // No direct X-Y edge.
        std::vector<int> role(g.num_vertices(), 0);
        for (int v : step.side_x) role[v] = 1;
        for (int v : step.side_y) role[v] = 2;
        for (const Edge& e : g.edges) {
            int ra = role[g.global_a(e.a)], rb = role[g.global_b(e.b)];
            CHECK((ra + rb != 3));
        }
    }
}

TEST_CASE("separator rejects a step violating separation") {
    BipartiteGraph g = lattice_graph(1, 16);
    SeparatorFn bad = [](const BipartiteGraph&, const std::vector<int>& vs) {
        SeparatorStep s;  // no separator at all: X and Y stay adjacent
        for (std::size_t i = 0; i < vs.size(); ++i)
            (i < vs.size() / 2 ? s.side_x : s.side_y).push_back(vs[i]);
        return s;
    };
    CHECK_THROWS_AS(assign_weights_recursive(g, 2, bad), input_error);
}

TEST_CASE("lattice pipeline: piece bounds, weight bound, cardinality") {
    for (int k : {8, 16, 32}) {
        BipartiteGraph g = lattice_graph(k, k);
        int n = g.num_vertices();
        int r = std::max(4, (int)std::llround(std::pow((double)n, 2.0 / 3.0)));
        WeightAssignment wa = assign_weights_recursive(g, r, grid_graph_separator);

        BipartiteGraph weighted = reweighted(g, wa.weight);
        PieceDecomposition pd = compute_pieces(weighted);
        CHECK(pd.max_piece_vertices <= 2 * r);
        CHECK(pd.max_piece_edges <= 4.0 * g.edges.size() * r / n);

        MatchResult res = run_matcher(weighted, pd);
        CHECK(res.matching_size == hopcroft_karp(g).size);
        CHECK((double)res.matching_weight <= 8.0 * n / std::sqrt((double)r));
    }
}

TEST_CASE("k x k lattice with r = k keeps pieces small") {
    const int k = 16;
    BipartiteGraph g = lattice_graph(k, k);
    WeightAssignment wa = assign_weights_recursive(g, k, grid_graph_separator);
    BipartiteGraph weighted = reweighted(g, wa.weight);
    PieceDecomposition pd = compute_pieces(weighted);
    CHECK(pd.max_piece_vertices <= 2 * k);
}
