#include "zom/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace zom {

namespace {

[[noreturn]] void fail_line(int line_no, const std::string& what) {
    throw input_error("line " + std::to_string(line_no) + ": " + what);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

BipartiteGraph parse_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_data_line = [&](std::string& dst) {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            dst = line;
            return true;
        }
        return false;
    };

    std::string header;
    do {
        if (!next_data_line(header)) throw input_error("empty graph file");
    } while (header[0] == '#');

    int n_a, n_b;
    long long m;
    {
        std::istringstream ss(header);
        if (!(ss >> n_a >> n_b >> m) || n_a < 0 || n_b < 0 || m < 0)
            fail_line(line_no, "expected header 'n_a n_b m'");
    }

    std::vector<EdgeInput> edges;
    edges.reserve((std::size_t)m);
    while ((long long)edges.size() < m) {
        std::string data;
        if (!next_data_line(data)) fail_line(line_no, "unexpected end of file inside edge list");
        if (data[0] == '#') fail_line(line_no, "comment inside edge list");
        std::istringstream ss(data);
        EdgeInput e;
        if (!(ss >> e.a >> e.b >> e.w)) fail_line(line_no, "expected edge 'a b w'");
        std::string rest;
        if (ss >> rest) fail_line(line_no, "trailing tokens after edge");
        if (e.w != 0 && e.w != 1) fail_line(line_no, "edge weight outside {0,1}");
        edges.push_back(e);
    }

    BipartiteGraph g;
    try {
        g = build_graph(n_a, n_b, edges);
    } catch (const input_error& err) {
        throw input_error(std::string("graph body: ") + err.what());
    }

    // Trailing lines: comments, optionally "# coord v x y".
    std::string tail;
    while (next_data_line(tail)) {
        std::istringstream ss(tail);
        std::string hash, tag;
        ss >> hash;
        if (hash != "#") fail_line(line_no, "unexpected data after edge list");
        if (!(ss >> tag) || tag != "coord") continue;
        int v, x, y;
        if (!(ss >> v >> x >> y)) fail_line(line_no, "expected '# coord v x y'");
        if (v < 0 || v >= g.num_vertices()) fail_line(line_no, "coord vertex out of range");
        if (g.coords.empty()) g.coords.assign(g.num_vertices(), {0, 0});
        g.coords[v] = {x, y};
    }
    return g;
}

BipartiteGraph parse_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open graph file: " + path);
    try {
        return parse_graph(in);
    } catch (const input_error& err) {
        throw input_error(path + ": " + err.what());
    }
}

void emit_graph(std::ostream& out, const BipartiteGraph& g) {
    out << g.n_a << ' ' << g.n_b << ' ' << g.edges.size() << '\n';
    for (const Edge& e : g.edges) out << e.a << ' ' << e.b << ' ' << e.w << '\n';
    if (g.has_coords())
        for (int v = 0; v < g.num_vertices(); ++v)
            out << "# coord " << v << ' ' << g.coords[v][0] << ' ' << g.coords[v][1] << '\n';
}

std::string graph_to_string(const BipartiteGraph& g) {
    std::ostringstream ss;
    emit_graph(ss, g);
    return ss.str();
}

PointSet parse_points(std::istream& in) {
    PointSet ps;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string side;
        double x, y;
        if (!(ss >> side >> x >> y) || (side != "A" && side != "B"))
            fail_line(line_no, "expected 'A x y' or 'B x y'");
        std::string rest;
        if (ss >> rest) fail_line(line_no, "trailing tokens after point");
        (side == "A" ? ps.a : ps.b).push_back({x, y});
    }
    return ps;
}

PointSet parse_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open points file: " + path);
    try {
        return parse_points(in);
    } catch (const input_error& err) {
        throw input_error(path + ": " + err.what());
    }
}

void emit_points(std::ostream& out, const PointSet& ps) {
    for (const Point& p : ps.a) out << "A " << fmt_double(p.x) << ' ' << fmt_double(p.y) << '\n';
    for (const Point& p : ps.b) out << "B " << fmt_double(p.x) << ' ' << fmt_double(p.y) << '\n';
}

std::string points_to_string(const PointSet& ps) {
    std::ostringstream ss;
    emit_points(ss, ps);
    return ss.str();
}

} // namespace zom
