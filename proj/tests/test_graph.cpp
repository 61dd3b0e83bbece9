#include "doctest.h"

#include "helpers.hpp"
#include "zom/graph.hpp"
#include "zom/state.hpp"

using namespace zom;

TEST_CASE("build_graph smallest instance") {
    BipartiteGraph g = build_graph(1, 1, {{0, 0, 0}});
    CHECK(g.edges.size() == 1);
    CHECK(g.edges[0].w == 0);
    CHECK(g.adj_a[0].size() == 1);
    CHECK(g.adj_b[0].size() == 1);
}

TEST_CASE("build_graph rejects bad input and names the edge") {
    CHECK_THROWS_AS(build_graph(2, 2, {{0, 2, 0}}), input_error);
    CHECK_THROWS_AS(build_graph(2, 2, {{-1, 0, 0}}), input_error);
    CHECK_THROWS_AS(build_graph(2, 2, {{0, 0, 2}}), input_error);
    CHECK_THROWS_AS(build_graph(2, 2, {{0, 0, 0}, {0, 0, 1}}), input_error);
    try {
        build_graph(2, 2, {{0, 0, 0}, {1, 1, 7}});
        CHECK(false);
    } catch (const input_error& e) {
        CHECK(std::string(e.what()).find("(1,1,7)") != std::string::npos);
    }
}

TEST_CASE("adjacency lists cover every edge once per side") {
    Rng rng(7);
    BipartiteGraph g = testing::random_graph(rng, 3, 3, 9, 0.5);
    std::size_t total_a = 0, total_b = 0;
    for (const auto& l : g.adj_a) total_a += l.size();
    for (const auto& l : g.adj_b) total_b += l.size();
    CHECK(total_a == 9);
    CHECK(total_b == 9);
}

TEST_CASE("pieces of an all-ones graph are singletons") {
    BipartiteGraph g = build_graph(2, 2, {{0, 0, 1}, {1, 1, 1}});
    PieceDecomposition pd = compute_pieces(g);
    CHECK(pd.piece_count == 4);
    CHECK(pd.max_piece_vertices == 1);
    CHECK(pd.max_piece_edges == 0);
    for (const Edge& e : g.edges) CHECK(e.piece == -1);
}

TEST_CASE("a weight-0 path forms one piece") {
    // a0 - b0 - a1 connected by two weight-0 edges
    BipartiteGraph g = build_graph(2, 1, {{0, 0, 0}, {1, 0, 0}});
    PieceDecomposition pd = compute_pieces(g);
    CHECK(pd.piece_count == 1);
    CHECK(pd.max_piece_vertices == 3);
    CHECK(pd.max_piece_edges == 2);
    CHECK(g.edges[0].piece == g.edges[1].piece);
}

TEST_CASE("piece decomposition matches a union-find oracle") {
    Rng rng(11);
    for (int it = 0; it < 25; ++it) {
        BipartiteGraph g = testing::random_graph(rng, rng.range(1, 20), rng.range(1, 20),
                                                 rng.range(0, 60), 0.5);
        PieceDecomposition pd = compute_pieces(g);
        CHECK(testing::same_partition(pd.vertex_piece, testing::union_find_pieces(g)));
        CHECK(pd.piece_count ==
              (int)std::set<int>(pd.vertex_piece.begin(), pd.vertex_piece.end()).size());
    }
}

TEST_CASE("initial state is feasible") {
    BipartiteGraph g = build_graph(2, 2, {{0, 0, 1}, {0, 1, 0}, {1, 1, 1}});
    MatchState st = MatchState::initial(g);
    CHECK(check_feasibility(g, st).empty());
}

TEST_CASE("a weight-1 matching edge with zero duals violates the equality condition") {
    BipartiteGraph g = build_graph(1, 1, {{0, 0, 1}});
    MatchState st = MatchState::initial(g);
    st.mate_a[0] = 0;
    st.mate_b[0] = 0;
    auto v = check_feasibility(g, st);
    REQUIRE(v.size() == 1);
    CHECK(v[0].edge_id == 0);
    CHECK(v[0].condition.find("matching edge") != std::string::npos);
}

TEST_CASE("slack") {
    BipartiteGraph g = build_graph(1, 1, {{0, 0, 1}});
    MatchState st = MatchState::initial(g);
    CHECK(slack(g, 0, st) == 1);  // duals 0, c=1, non-matching

    st.dual_a[0] = 1;
    st.dual_b[0] = 2;
    CHECK(slack(g, 0, st) == 0);  // 1 + 1 - 2

    st.mate_a[0] = 0;
    st.mate_b[0] = 0;
    CHECK(slack(g, 0, st) == 0);  // matching edges have no slack

    st.mate_a[0] = -1;
    st.mate_b[0] = -1;
    st.dual_b[0] = 3;
    CHECK_THROWS_AS(slack(g, 0, st), invariant_error);
}
