#pragma once

#include <array>
#include <vector>

#include "zom/errors.hpp"

namespace zom {

// One undirected edge of a bipartite graph. `a` and `b` are side-local
// indices, `w` is 0 or 1, `piece` is the id of the weight-0 component the
// edge belongs to (-1 for weight-1 edges, and for weight-0 edges until
// compute_pieces has run).
struct Edge {
    int a = 0;
    int b = 0;
    int w = 0;
    int piece = -1;
};

struct EdgeInput {
    int a = 0;
    int b = 0;
    int w = 0;
};

// Bipartite graph over parts A (indices 0..n_a-1) and B (0..n_b-1) with
// 0/1 edge weights. Adjacency lists store edge ids in insertion order.
// Immutable after construction except for the piece ids filled in by
// compute_pieces.
struct BipartiteGraph {
    int n_a = 0;
    int n_b = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj_a;
    std::vector<std::vector<int>> adj_b;

    // Optional 2D lattice coordinates, one entry per global vertex
    // (A first, then B). Empty when the instance carries no geometry.
    std::vector<std::array<int, 2>> coords;

    int num_vertices() const { return n_a + n_b; }
    bool has_coords() const { return !coords.empty(); }

    // Global vertex ids: A vertices come first, then B.
    int global_a(int a) const { return a; }
    int global_b(int b) const { return n_a + b; }
    bool is_b(int v) const { return v >= n_a; }
    int side_index(int v) const { return v >= n_a ? v - n_a : v; }
};

// Validates indices, weights and duplicates, then builds adjacency.
// Piece ids stay unassigned until compute_pieces.
BipartiteGraph build_graph(int n_a, int n_b, const std::vector<EdgeInput>& edges);

// Connected components of the weight-0 subgraph. Every vertex carries a
// piece id; vertices without an incident weight-0 edge form singleton
// pieces so the id map is total.
struct PieceDecomposition {
    int piece_count = 0;
    std::vector<int> vertex_piece;      // global vertex -> piece id
    std::vector<int> piece_vertices;    // per piece: vertex count
    std::vector<int> piece_edges;       // per piece: weight-0 edge count
    int max_piece_vertices = 0;
    int max_piece_edges = 0;
};

// Fills the per-edge piece ids of weight-0 edges as a side effect.
PieceDecomposition compute_pieces(BipartiteGraph& graph);

} // namespace zom
