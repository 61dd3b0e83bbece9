#include "zom/graph.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_set>

namespace zom {

BipartiteGraph build_graph(int n_a, int n_b, const std::vector<EdgeInput>& edges) {
    if (n_a < 0 || n_b < 0)
        throw input_error("vertex counts must be non-negative");

    BipartiteGraph g;
    g.n_a = n_a;
    g.n_b = n_b;
    g.adj_a.resize(n_a);
    g.adj_b.resize(n_b);
    g.edges.reserve(edges.size());

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges.size() * 2);

    for (std::size_t i = 0; i < edges.size(); ++i) {
        const EdgeInput& e = edges[i];
        const std::string where = "edge #" + std::to_string(i) + " (" + std::to_string(e.a) +
                                  "," + std::to_string(e.b) + "," + std::to_string(e.w) + ")";
        if (e.a < 0 || e.a >= n_a || e.b < 0 || e.b >= n_b)
            throw input_error("vertex index out of range at " + where);
        if (e.w != 0 && e.w != 1)
            throw input_error("edge weight outside {0,1} at " + where);
        std::uint64_t key = (std::uint64_t)(std::uint32_t)e.a << 32 | (std::uint32_t)e.b;
        if (!seen.insert(key).second)
            throw input_error("duplicate edge at " + where);

        int id = (int)g.edges.size();
        g.edges.push_back(Edge{e.a, e.b, e.w, -1});
        g.adj_a[e.a].push_back(id);
        g.adj_b[e.b].push_back(id);
    }
    return g;
}

PieceDecomposition compute_pieces(BipartiteGraph& graph) {
    const int n = graph.num_vertices();
    PieceDecomposition pd;
    pd.vertex_piece.assign(n, -1);

    // BFS over weight-0 edges; vertices left over become singleton pieces.
    std::vector<int> queue;
    for (int start = 0; start < n; ++start) {
        if (pd.vertex_piece[start] != -1) continue;
        int id = pd.piece_count++;
        pd.vertex_piece[start] = id;
        queue.clear();
        queue.push_back(start);
        int verts = 0;
        while (!queue.empty()) {
            int v = queue.back();
            queue.pop_back();
            ++verts;
            const bool on_b = graph.is_b(v);
            const auto& adj = on_b ? graph.adj_b[v - graph.n_a] : graph.adj_a[v];
            for (int eid : adj) {
                const Edge& e = graph.edges[eid];
                if (e.w != 0) continue;
                int other = on_b ? graph.global_a(e.a) : graph.global_b(e.b);
                if (pd.vertex_piece[other] == -1) {
                    pd.vertex_piece[other] = id;
                    queue.push_back(other);
                }
            }
        }
        pd.piece_vertices.push_back(verts);
        pd.piece_edges.push_back(0);
    }

    for (Edge& e : graph.edges) {
        if (e.w != 0) {
            e.piece = -1;
            continue;
        }
        e.piece = pd.vertex_piece[graph.global_a(e.a)];
        require(e.piece == pd.vertex_piece[graph.global_b(e.b)],
                "weight-0 edge endpoints in different pieces");
        ++pd.piece_edges[e.piece];
    }

    pd.max_piece_vertices =
        pd.piece_vertices.empty() ? 0 : *std::max_element(pd.piece_vertices.begin(), pd.piece_vertices.end());
    pd.max_piece_edges =
        pd.piece_edges.empty() ? 0 : *std::max_element(pd.piece_edges.begin(), pd.piece_edges.end());
    return pd;
}

} // namespace zom
