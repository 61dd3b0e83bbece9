#pragma once

#include <iosfwd>
#include <string>

#include "zom/baseline.hpp"
#include "zom/graph.hpp"

namespace zom {

// Graph text format:
//   n_a n_b m
//   a b w          (m lines, w in {0,1})
//   # coord v x y  (optional; v is a global vertex id, A side first)
// '#' lines other than coord records are comments.
BipartiteGraph parse_graph(std::istream& in);
BipartiteGraph parse_graph_file(const std::string& path);
void emit_graph(std::ostream& out, const BipartiteGraph& g);
std::string graph_to_string(const BipartiteGraph& g);

// Point text format: one "A x y" or "B x y" line per point.
PointSet parse_points(std::istream& in);
PointSet parse_points_file(const std::string& path);
void emit_points(std::ostream& out, const PointSet& ps);
std::string points_to_string(const PointSet& ps);

} // namespace zom
