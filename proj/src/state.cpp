#include "zom/state.hpp"

#include <algorithm>
#include <string>

namespace zom {

MatchState MatchState::initial(const BipartiteGraph& g) {
    MatchState s;
    s.mate_a.assign(g.n_a, -1);
    s.mate_b.assign(g.n_b, -1);
    s.dual_a.assign(g.n_a, 0);
    s.dual_b.assign(g.n_b, 0);
    s.deleted_epoch.assign(g.edges.size(), 0);
    s.phase = 0;
    return s;
}

int MatchState::matching_size() const {
    int n = 0;
    for (int m : mate_a)
        if (m != -1) ++n;
    return n;
}

int MatchState::matching_weight(const BipartiteGraph& g) const {
    int w = 0;
    for (int a = 0; a < g.n_a; ++a) {
        int b = mate_a[a];
        if (b == -1) continue;
        for (int eid : g.adj_a[a]) {
            if (g.edges[eid].b == b) {
                w += g.edges[eid].w;
                break;
            }
        }
    }
    return w;
}

int slack(const BipartiteGraph& g, int edge_id, const MatchState& state) {
    const Edge& e = g.edges[edge_id];
    if (state.mate_a[e.a] == e.b) return 0;
    int s = e.w + state.dual_a[e.a] - state.dual_b[e.b];
    if (s < 0)
        throw invariant_error("negative slack on edge (" + std::to_string(e.a) + "," +
                              std::to_string(e.b) + "): state is infeasible");
    return s;
}

std::vector<FeasibilityViolation> check_feasibility(const BipartiteGraph& g,
                                                    const MatchState& state) {
    std::vector<FeasibilityViolation> out;
    for (int eid = 0; eid < (int)g.edges.size(); ++eid) {
        const Edge& e = g.edges[eid];
        if (state.mate_a[e.a] == e.b) {
            int lhs = state.dual_a[e.a] - state.dual_b[e.b];
            if (lhs != e.w)
                out.push_back({eid, "matching edge: y(a)-y(b)=" + std::to_string(lhs) +
                                        " != c=" + std::to_string(e.w)});
        } else {
            int lhs = state.dual_b[e.b] - state.dual_a[e.a];
            if (lhs > e.w)
                out.push_back({eid, "non-matching edge: y(b)-y(a)=" + std::to_string(lhs) +
                                        " > c=" + std::to_string(e.w)});
        }
    }
    return out;
}

namespace {

// Bucket queue for integer distances. Relevant distances are bounded by
// the matching weight, so anything past n_a+n_b can be treated as
// unreachable without affecting dual updates or the termination test.
struct DialQueue {
    std::vector<std::vector<int>> buckets;
    int cursor = 0;
    explicit DialQueue(int max_key) : buckets(max_key + 1) {}
    void push(int key, int v) { buckets[key].push_back(v); }
};

} // namespace

DijkstraResult residual_dijkstra(const BipartiteGraph& g, const MatchState& state) {
    const int max_key = g.n_a + g.n_b;
    DijkstraResult r;
    r.inf = max_key + 1;
    r.dist_a.assign(g.n_a, r.inf);
    r.dist_b.assign(g.n_b, r.inf);

    DialQueue q(max_key);
    for (int b = 0; b < g.n_b; ++b) {
        if (state.mate_b[b] == -1) {
            r.dist_b[b] = 0;
            q.push(0, g.global_b(b));
        }
    }

    for (int key = 0; key <= max_key; ++key) {
        auto& bucket = q.buckets[key];
        for (std::size_t i = 0; i < bucket.size(); ++i) {
            int v = bucket[i];
            if (g.is_b(v)) {
                int b = v - g.n_a;
                if (r.dist_b[b] != key) continue;  // stale entry
                for (int eid : g.adj_b[b]) {
                    const Edge& e = g.edges[eid];
                    if (state.mate_a[e.a] == e.b) continue;  // matching edges leave A
                    int nd = key + slack(g, eid, state);
                    if (nd <= max_key && nd < r.dist_a[e.a]) {
                        r.dist_a[e.a] = nd;
                        q.push(nd, g.global_a(e.a));
                    }
                }
            } else {
                int a = v;
                if (r.dist_a[a] != key) continue;
                int b = state.mate_a[a];
                if (b != -1 && key < r.dist_b[b]) {  // matched edge has slack 0
                    r.dist_b[b] = key;
                    q.push(key, g.global_b(b));
                }
            }
        }
        bucket.clear();
    }
    return r;
}

bool admissible_augmenting_path_exists(const BipartiteGraph& g, const MatchState& state) {
    const int n = g.num_vertices();
    std::vector<char> seen(n, 0);
    std::vector<int> queue;
    for (int b = 0; b < g.n_b; ++b) {
        if (state.mate_b[b] == -1) {
            seen[g.global_b(b)] = 1;
            queue.push_back(g.global_b(b));
        }
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        if (g.is_b(v)) {
            int b = v - g.n_a;
            for (int eid : g.adj_b[b]) {
                const Edge& e = g.edges[eid];
                if (state.mate_a[e.a] == e.b) continue;
                if (slack(g, eid, state) != 0) continue;
                if (state.mate_a[e.a] == -1) return true;
                int u = g.global_a(e.a);
                if (!seen[u]) {
                    seen[u] = 1;
                    queue.push_back(u);
                }
            }
        } else {
            int mb = state.mate_a[v];
            if (mb != -1 && !seen[g.global_b(mb)]) {
                seen[g.global_b(mb)] = 1;
                queue.push_back(g.global_b(mb));
            }
        }
    }
    return false;
}

namespace {

// Iterative Tarjan over the zero-slack residual digraph.
struct SccContext {
    const BipartiteGraph& g;
    const MatchState& state;
    std::vector<int> comp, low, num, stack;
    std::vector<char> on_stack;
    int counter = 0, comps = 0;

    SccContext(const BipartiteGraph& gg, const MatchState& ss)
        : g(gg), state(ss), comp(gg.num_vertices(), -1), low(gg.num_vertices(), 0),
          num(gg.num_vertices(), -1), on_stack(gg.num_vertices(), 0) {}

    // Zero-slack out-neighbors of a global vertex.
    void out_edges(int v, std::vector<int>& dst) const {
        dst.clear();
        if (g.is_b(v)) {
            int b = v - g.n_a;
            for (int eid : g.adj_b[b]) {
                const Edge& e = g.edges[eid];
                if (state.mate_a[e.a] == e.b) continue;
                if (slack(g, eid, state) == 0) dst.push_back(g.global_a(e.a));
            }
        } else {
            int mb = state.mate_a[v];
            if (mb != -1) dst.push_back(g.global_b(mb));
        }
    }

    void run(int root) {
        struct Frame {
            int v;
            std::vector<int> next;
            std::size_t i = 0;
        };
        std::vector<Frame> frames;
        frames.push_back({root, {}, 0});
        num[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        out_edges(root, frames.back().next);

        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.i < f.next.size()) {
                int u = f.next[f.i++];
                if (num[u] == -1) {
                    num[u] = low[u] = counter++;
                    stack.push_back(u);
                    on_stack[u] = 1;
                    frames.push_back({u, {}, 0});
                    out_edges(u, frames.back().next);
                } else if (on_stack[u]) {
                    low[f.v] = std::min(low[f.v], num[u]);
                }
            } else {
                int v = f.v;
                if (low[v] == num[v]) {
                    while (true) {
                        int u = stack.back();
                        stack.pop_back();
                        on_stack[u] = 0;
                        comp[u] = comps;
                        if (u == v) break;
                    }
                    ++comps;
                }
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            }
        }
    }
};

} // namespace

bool admissible_positive_cycle_exists(const BipartiteGraph& g, const MatchState& state) {
    SccContext ctx(g, state);
    for (int v = 0; v < g.num_vertices(); ++v)
        if (ctx.num[v] == -1) ctx.run(v);

    for (int eid = 0; eid < (int)g.edges.size(); ++eid) {
        const Edge& e = g.edges[eid];
        if (e.w != 1) continue;
        int u, v;
        if (state.mate_a[e.a] == e.b) {
            u = g.global_a(e.a);
            v = g.global_b(e.b);
        } else {
            if (slack(g, eid, state) != 0) continue;
            u = g.global_b(e.b);
            v = g.global_a(e.a);
        }
        if (ctx.comp[u] == ctx.comp[v]) return true;
    }
    return false;
}

} // namespace zom
