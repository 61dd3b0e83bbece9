#include "zom/separator.hpp"

#include <algorithm>
#include <climits>
#include <string>

namespace zom {

namespace {

// Edges of the induced subgraph, given a membership mark.
std::vector<int> induced_edges(const BipartiteGraph& g, const std::vector<char>& in,
                               const std::vector<int>& vertices) {
    std::vector<int> out;
    for (int v : vertices) {
        if (g.is_b(v)) continue;  // enumerate from the A side once
        for (int eid : g.adj_a[v])
            if (in[g.global_b(g.edges[eid].b)]) out.push_back(eid);
    }
    return out;
}

void validate_step(const BipartiteGraph& g, const std::vector<int>& vertices,
                   const SeparatorStep& step, double alpha) {
    std::vector<char> role(g.num_vertices(), 0);  // 1=x, 2=y, 3=sep
    std::size_t assigned = step.side_x.size() + step.side_y.size() + step.separator.size();
    if (assigned != vertices.size())
        throw input_error("separator step does not partition the subgraph (" +
                          std::to_string(assigned) + " of " + std::to_string(vertices.size()) +
                          " vertices assigned)");
    std::vector<char> in(g.num_vertices(), 0);
    for (int v : vertices) in[v] = 1;
    auto mark = [&](const std::vector<int>& vs, char r) {
        for (int v : vs) {
            if (!in[v] || role[v])
                throw input_error("separator step assigns vertex " + std::to_string(v) +
                                  " outside the subgraph or twice");
            role[v] = r;
        }
    };
    mark(step.side_x, 1);
    mark(step.side_y, 2);
    mark(step.separator, 3);

    // Balance over the vertices that remain after removing the separator.
    double need = (double)(step.side_x.size() + step.side_y.size()) / alpha;
    if ((double)std::min(step.side_x.size(), step.side_y.size()) < need)
        throw input_error("separator step unbalanced: sides " +
                          std::to_string(step.side_x.size()) + "/" +
                          std::to_string(step.side_y.size()) + " for " +
                          std::to_string(vertices.size()) + " vertices, alpha=" +
                          std::to_string(alpha));

    for (int eid : induced_edges(g, in, vertices)) {
        const Edge& e = g.edges[eid];
        char ra = role[g.global_a(e.a)], rb = role[g.global_b(e.b)];
        if ((ra == 1 && rb == 2) || (ra == 2 && rb == 1))
            throw input_error("separator step leaves a direct X-Y edge (" + std::to_string(e.a) +
                              "," + std::to_string(e.b) + ")");
    }
}

struct RecursionContext {
    const BipartiteGraph& g;
    const SeparatorFn& fn;
    const SeparatorOptions& opt;
    long long vertex_cap;
    long long edge_cap;
    WeightAssignment result;

    void split(std::vector<int> vertices) {
        std::vector<char> in(g.num_vertices(), 0);
        for (int v : vertices) in[v] = 1;
        std::vector<int> edges = induced_edges(g, in, vertices);

        if ((long long)vertices.size() <= vertex_cap && (long long)edges.size() <= edge_cap) {
            for (int eid : edges)
                if (result.weight[eid] == -1) result.weight[eid] = 0;
            return;
        }

        SeparatorStep step = fn(g, vertices);
        validate_step(g, vertices, step, opt.alpha);
        ++result.steps;
        result.separator_vertices += (int)step.separator.size();

        std::vector<char> sep(g.num_vertices(), 0);
        for (int v : step.separator) sep[v] = 1;
        for (int eid : edges) {
            const Edge& e = g.edges[eid];
            if (sep[g.global_a(e.a)] || sep[g.global_b(e.b)])
                if (result.weight[eid] == -1) result.weight[eid] = 1;
        }
        split(std::move(step.side_x));
        split(std::move(step.side_y));
    }
};

} // namespace

WeightAssignment assign_weights_recursive(const BipartiteGraph& g, int r,
                                          const SeparatorFn& separator_fn,
                                          const SeparatorOptions& options) {
    if (r < 1) throw input_error("piece size target r must be >= 1");
    // Split anything above r vertices or m*r/n edges; the configured
    // c_v/c_e constants are the slack asserted on the resulting pieces.
    RecursionContext ctx{g, separator_fn, options, (long long)r,
                         (long long)((double)g.edges.size() * r / std::max(1, g.num_vertices())),
                         {}};
    ctx.result.weight.assign(g.edges.size(), -1);
    std::vector<int> all(g.num_vertices());
    for (int v = 0; v < g.num_vertices(); ++v) all[v] = v;
    ctx.split(std::move(all));
    for (int& w : ctx.result.weight)
        require(w != -1, "edge left unweighted by the separator recursion");
    return std::move(ctx.result);
}

SeparatorStep grid_graph_separator(const BipartiteGraph& g, const std::vector<int>& vertices) {
    if (!g.has_coords())
        throw input_error("grid separator needs lattice coordinates on the graph");

    int min_x = INT_MAX, max_x = INT_MIN, min_y = INT_MAX, max_y = INT_MIN;
    for (int v : vertices) {
        min_x = std::min(min_x, g.coords[v][0]);
        max_x = std::max(max_x, g.coords[v][0]);
        min_y = std::min(min_y, g.coords[v][1]);
        max_y = std::max(max_y, g.coords[v][1]);
    }
    // Split the larger extent at the weighted median coordinate.
    int axis = (max_x - min_x >= max_y - min_y) ? 0 : 1;

    std::vector<int> coords;
    coords.reserve(vertices.size());
    for (int v : vertices) coords.push_back(g.coords[v][axis]);
    std::vector<int> sorted = coords;
    std::sort(sorted.begin(), sorted.end());
    int median = sorted[sorted.size() / 2];

    SeparatorStep step;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (coords[i] < median)
            step.side_x.push_back(vertices[i]);
        else if (coords[i] > median)
            step.side_y.push_back(vertices[i]);
        else
            step.separator.push_back(vertices[i]);
    }
    return step;
}

BipartiteGraph reweighted(const BipartiteGraph& g, const std::vector<int>& weights) {
    if (weights.size() != g.edges.size())
        throw input_error("weight vector size does not match the edge count");
    std::vector<EdgeInput> edges;
    edges.reserve(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        edges.push_back({g.edges[i].a, g.edges[i].b, weights[i]});
    BipartiteGraph out = build_graph(g.n_a, g.n_b, edges);
    out.coords = g.coords;
    return out;
}

} // namespace zom
