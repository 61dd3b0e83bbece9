#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zom/baseline.hpp"
#include "zom/gen.hpp"
#include "zom/geo.hpp"
#include "zom/io.hpp"
#include "zom/matcher.hpp"
#include "zom/separator.hpp"

namespace py = pybind11;
using namespace zom;

namespace {

BipartiteGraph graph_from(int n_a, int n_b, const std::vector<std::tuple<int, int, int>>& edges) {
    std::vector<EdgeInput> in;
    in.reserve(edges.size());
    for (auto& [a, b, w] : edges) in.push_back({a, b, w});
    return build_graph(n_a, n_b, in);
}

py::dict result_dict(const MatchResult& r) {
    py::dict d;
    d["matching_size"] = r.matching_size;
    d["w"] = r.matching_weight;
    d["phases"] = r.total_phases;
    d["augmenting_paths"] = r.total_augmenting_paths;
    d["sum_affected"] = r.total_affected;
    d["sum_path_weights"] = r.sum_path_weights;
    d["mate_a"] = r.mate_a;
    d["mate_b"] = r.mate_b;
    d["dual_a"] = r.dual_a;
    d["dual_b"] = r.dual_b;
    d["ledger_warnings"] = r.ledger_warnings;
    return d;
}

PointSet points_from(const std::vector<std::pair<double, double>>& a,
                     const std::vector<std::pair<double, double>>& b) {
    PointSet ps;
    for (auto& [x, y] : a) ps.a.push_back({x, y});
    for (auto& [x, y] : b) ps.b.push_back({x, y});
    return ps;
}

} // namespace

PYBIND11_MODULE(zom, m) {
    m.doc() = "0/1-weighted bipartite matching engine with a geometric bottleneck matcher";

    py::register_exception<input_error>(m, "InputError");
    py::register_exception<invariant_error>(m, "InvariantError");

    m.def(
        "match_graph",
        [](int n_a, int n_b, const std::vector<std::tuple<int, int, int>>& edges) {
            BipartiteGraph g = graph_from(n_a, n_b, edges);
            return result_dict(run_matcher(g));
        },
        py::arg("n_a"), py::arg("n_b"), py::arg("edges"),
        "Maximum-cardinality matching via the 0/1-weighted phase algorithm.");

    m.def(
        "hopcroft_karp",
        [](int n_a, int n_b, const std::vector<std::tuple<int, int, int>>& edges) {
            Matching match = hopcroft_karp(graph_from(n_a, n_b, edges));
            py::dict d;
            d["size"] = match.size;
            d["mate_a"] = match.mate_a;
            d["mate_b"] = match.mate_b;
            return d;
        },
        py::arg("n_a"), py::arg("n_b"), py::arg("edges"));

    m.def(
        "max_matching_size",
        [](int n_a, int n_b, const std::vector<std::tuple<int, int, int>>& edges) {
            return brute_force_max_matching(graph_from(n_a, n_b, edges)).matching_size;
        },
        py::arg("n_a"), py::arg("n_b"), py::arg("edges"),
        "Exact oracle with a vertex-cover certificate behind it.");

    m.def(
        "compute_pieces",
        [](int n_a, int n_b, const std::vector<std::tuple<int, int, int>>& edges) {
            BipartiteGraph g = graph_from(n_a, n_b, edges);
            PieceDecomposition pd = compute_pieces(g);
            py::dict d;
            d["piece_count"] = pd.piece_count;
            d["vertex_piece"] = pd.vertex_piece;
            d["max_piece_vertices"] = pd.max_piece_vertices;
            d["max_piece_edges"] = pd.max_piece_edges;
            return d;
        },
        py::arg("n_a"), py::arg("n_b"), py::arg("edges"));

    m.def(
        "bottleneck_match",
        [](const std::vector<std::pair<double, double>>& a,
           const std::vector<std::pair<double, double>>& b, double eps, int r) {
            GeoOptions opt;
            opt.r = r;
            BottleneckResult res = bottleneck_match(points_from(a, b), eps, opt);
            py::dict d;
            d["bottleneck"] = res.bottleneck;
            d["mate_a"] = res.mate_a;
            d["winning_delta"] = res.winning_delta;
            d["r"] = res.r;
            d["rungs"] = (int)res.rungs.size();
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("eps"), py::arg("r") = -1,
        "Approximate bottleneck matching: bottleneck <= (1+eps) * optimum.");

    m.def(
        "bottleneck_oracle",
        [](const std::vector<std::pair<double, double>>& a,
           const std::vector<std::pair<double, double>>& b) {
            auto res = oracle_bottleneck(points_from(a, b));
            return py::make_tuple(res.distance, res.mate_a);
        },
        py::arg("a"), py::arg("b"), "Exact bottleneck distance and a witness matching.");

    m.def(
        "separator_weights",
        [](int n_a, int n_b, const std::vector<std::tuple<int, int, int>>& edges,
           const std::vector<std::pair<int, int>>& coords, int r) {
            BipartiteGraph g = graph_from(n_a, n_b, edges);
            g.coords.resize(g.num_vertices());
            if ((int)coords.size() != g.num_vertices())
                throw input_error("need one coordinate pair per vertex");
            for (int v = 0; v < g.num_vertices(); ++v)
                g.coords[v] = {coords[v].first, coords[v].second};
            WeightAssignment wa = assign_weights_recursive(g, r, grid_graph_separator);
            return wa.weight;
        },
        py::arg("n_a"), py::arg("n_b"), py::arg("edges"), py::arg("coords"), py::arg("r"),
        "Recursive balanced-separator 0/1 weight assignment for lattice graphs.");

    m.def("gen_graph",
          [](std::uint64_t seed, int n_a, int n_b, int m, double p1) {
              BipartiteGraph g = gen_random_graph(seed, n_a, n_b, m, p1);
              std::vector<std::tuple<int, int, int>> edges;
              for (const Edge& e : g.edges) edges.emplace_back(e.a, e.b, e.w);
              return edges;
          },
          py::arg("seed"), py::arg("n_a"), py::arg("n_b"), py::arg("m"), py::arg("p1"));

    m.def("gen_points",
          [](std::uint64_t seed, int n, const std::string& dist) {
              PointSet ps = gen_points(seed, n, point_distribution_from(dist));
              std::vector<std::pair<double, double>> a, b;
              for (const Point& p : ps.a) a.emplace_back(p.x, p.y);
              for (const Point& p : ps.b) b.emplace_back(p.x, p.y);
              return py::make_tuple(a, b);
          },
          py::arg("seed"), py::arg("n"), py::arg("dist") = "uniform");
}
