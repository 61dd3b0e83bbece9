#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "helpers.hpp"
#include "zom/geo.hpp"

using namespace zom;

TEST_CASE("delta ladder degenerates for coincident sets") {
    Rng rng(73);
    PointSet ps = testing::random_points(rng, 10, false);
    ps.b = ps.a;
    auto ladder = delta_candidates(ps, 0.5);
    REQUIRE(ladder.size() == 1);
    CHECK(ladder[0] == 0.0);
}

TEST_CASE("delta ladder for a single pair is that distance") {
    PointSet ps;
    ps.a.push_back({0, 0});
    ps.b.push_back({3, 4});
    auto ladder = delta_candidates(ps, 0.3);
    REQUIRE(ladder.size() == 1);
    CHECK(ladder[0] == doctest::Approx(5.0));
}

TEST_CASE("delta ladder lifts a zero lower bound when coincidence cannot pair up") {
    PointSet ps;
    ps.a = {{0, 0}, {0, 0}, {1, 0}};
    ps.b = {{0, 0}, {1, 0}, {1, 0}};
    auto ladder = delta_candidates(ps, 0.5);
    REQUIRE(!ladder.empty());
    CHECK(ladder[0] > 0.0);
}

TEST_CASE("delta ladder brackets the bottleneck distance") {
    Rng rng(79);
    for (double eps : {0.5, 0.25}) {
        PointSet ps = testing::random_points(rng, 64, false);
        double beta = oracle_bottleneck(ps).distance;
        auto ladder = delta_candidates(ps, eps);
        bool bracketed = false;
        for (double d : ladder)
            if (beta <= d && d <= (1 + eps / 3) * beta + 1e-12) bracketed = true;
        CHECK(bracketed);
    }
}

TEST_CASE("grid buckets points and neighborhoods match a brute-force scan") {
    Rng rng(83);
    for (int it = 0; it < 10; ++it) {
        PointSet ps = testing::random_points(rng, 24, it % 2 == 1);
        double delta = 0.05 + 0.4 * rng.uniform();
        GridIndex grid = build_grid(ps, delta, 0.5, 4);

        for (int c = 0; c < grid.cell_count(); ++c) {
            std::vector<int> brute;
            for (int d = 0; d < grid.cell_count(); ++d)
                if (grid.min_cell_dist2(grid.cell_keys[c], grid.cell_keys[d]) <=
                    grid.delta * grid.delta)
                    brute.push_back(d);
            std::vector<int> got = grid.neighbors[c];
            std::sort(got.begin(), got.end());
            CHECK(got == brute);
        }
    }
}

TEST_CASE("two points at distance exactly delta land in neighboring cells") {
    PointSet ps;
    ps.a.push_back({0, 0});
    ps.b.push_back({1, 0});
    GridIndex grid = build_grid(ps, 1.0, 0.5, 4);
    int ca = grid.cell_of_a[0], cb = grid.cell_of_b[0];
    bool found = false;
    for (int nb : grid.neighbors[ca])
        if (nb == cb) found = true;
    CHECK(found);
}

TEST_CASE("neighborhood size obeys the packing bound") {
    // Cells within delta of a fixed cell, counted over the full window.
    for (double eps : {1.0, 0.5, 0.25          }) {
        double delta = 1.0, side = eps * delta / (6.0 * std::sqrt(2.0));
        long long radius = (long long)std::floor(delta / side) + 2, count = 0;
        for (long long dx = -radius; dx <= radius; ++dx)
            for (long long dy = -radius; dy <= radius; ++dy) {
                double gx = std::max(0LL, std::llabs(dx) - 1) * side;
                double gy = std::max(0LL, std::llabs(dy) - 1) * side;
                if (gx * gx + gy * gy <= delta * delta) ++count;
            }
        CHECK((double)count <= 300.0 / (eps * eps));
    }
}

TEST_CASE("a tight cluster sees zero boundary points under the chosen shift") {
    Rng rng(89);
    PointSet ps;
    for (int i = 0; i < 8; ++i) {
        ps.a.push_back({rng.uniform() * 1e-4, rng.uniform() * 1e-4});
        ps.b.push_back({rng.uniform() * 1e-4, rng.uniform() * 1e-4});
    }
    GridIndex grid = build_grid(ps, 1.0, 0.5, 9);
    auto counts_v = shift_boundary_counts(grid, 0);
    CHECK(counts_v[grid.kappa_v - 1] == 0);
}

TEST_CASE("boundary flag matches the neighboring-box definition") {
    // A cell is boundary exactly when some cell within delta (over the
    // full grid, active or not) lies in a different box.
    Rng rng(90);
    PointSet ps = testing::random_points(rng, 64, false);
    double eps = 0.5, delta = 0.02;
    GridIndex grid = build_grid(ps, delta, eps, 1296);  // boxes wider than 2*delta

    auto slab = [&](int coord, int kappa) {
        int shifted = coord - kappa;
        return shifted >= 0 ? shifted / grid.sqrt_r : -((-shifted - 1) / grid.sqrt_r) - 1;
    };
    int radius = (int)std::floor(delta / grid.cell_side) + 2;
    int interior_cells = 0;
    for (int c = 0; c < grid.cell_count(); ++c) {
        CellKey key = grid.cell_keys[c];
        bool crosses = false;
        for (int dx = -radius; dx <= radius && !crosses; ++dx)
            for (int dy = -radius; dy <= radius && !crosses; ++dy) {
                CellKey other{key.x + dx, key.y + dy};
                if (grid.min_cell_dist2(key, other) > delta * delta) continue;
                if (slab(other.x, grid.kappa_v) != slab(key.x, grid.kappa_v) ||
                    slab(other.y, grid.kappa_h) != slab(key.y, grid.kappa_h))
                    crosses = true;
            }
        CHECK((bool)grid.boundary_cell[c] == crosses);
        if (!crosses) ++interior_cells;
    }
    CHECK(interior_cells > 0);  // the regime really has interior cells
}

TEST_CASE("chosen shift is no worse than the average shift") {
    Rng rng(97);
    for (int it = 0; it < 6; ++it) {
        PointSet ps = testing::random_points(rng, 48, false);
        GridIndex grid = build_grid(ps, 0.15, 0.5, 16);
        for (int axis : {0, 1}) {
            auto counts = shift_boundary_counts(grid, axis);
            long long total = 0;
            for (long long c : counts) total += c;
            long long chosen = counts[(axis == 0 ? grid.kappa_v : grid.kappa_h) - 1];
            CHECK(chosen * (long long)counts.size() <= total);
        }
    }
}

TEST_CASE("shift selection avoids a straddled line class") {
    // Points hugging x = 4*side: every class whose lines pass nearby
    // collects them all; the argmin class must be one that stays clear.
    PointSet ps;
    double eps = 0.5, delta = 0.1, side = eps * delta / (6.0 * std::sqrt(2.0));
    for (int i = 0; i < 16; ++i) {
        ps.a.push_back({4 * side + 1e-9, side * 40.0 * i / 16});
        ps.b.push_back({4 * side - 1e-9, side * 40.0 * i / 16});
    }
    GridIndex grid = build_grid(ps, delta, eps, 4);
    auto counts = shift_boundary_counts(grid, 0);
    long long best = counts[grid.kappa_v - 1];
    for (long long c : counts) CHECK(best <= c);
}

TEST_CASE("implicit weights agree with an independently built box table") {
    Rng rng(101);
    PointSet ps = testing::random_points(rng, 32, false);
    GridIndex grid = build_grid(ps, 0.2, 0.5, 9);

    // Recompute each cell's box by scanning line positions directly.
    auto box_by_scan = [&](int coord, int kappa) {
        int j = 0;
        while (kappa + (j + 1) * grid.sqrt_r <= coord) ++j;
        while (kappa + j * grid.sqrt_r > coord) --j;
        return j;
    };
    for (int c = 0; c < grid.cell_count(); ++c) {
        CHECK(grid.box_of[c].first == box_by_scan(grid.cell_keys[c].x, grid.kappa_v));
        CHECK(grid.box_of[c].second == box_by_scan(grid.cell_keys[c].y, grid.kappa_h));
        for (int nb : grid.neighbors[c]) {
            int expect = grid.box_of[c] == grid.box_of[nb] ? 0 : 1;
            CHECK(implicit_weight(grid, c, nb) == expect);
        }
        CHECK(implicit_weight(grid, c, c) == 0);
    }
}

TEST_CASE("compact network of the initial state") {
    Rng rng(103);
    PointSet ps = testing::random_points(rng, 20, false);
    GridIndex grid = build_grid(ps, 0.3, 0.5, 4);
    GeoState st;
    st.mate_a.assign(20, -1);
    st.mate_b.assign(20, -1);
    st.dual_a.assign(20, 0);
    st.dual_b.assign(20, 0);
    CompactResidual cr = build_compact(grid, st);
    CHECK(cr.max_clusters == 1);
    CHECK(cr.max_spread == 0);
    for (int c = 0; c < grid.cell_count(); ++c) {
        CHECK((int)cr.a_clusters[c].size() == (grid.cell_a[c].empty() ? 0 : 1));
        CHECK((int)cr.b_clusters[c].size() == (grid.cell_b[c].empty() ? 0 : 1));
    }
    // Nothing is matched, so every edge leaves a B cluster.
    for (const CompactEdge& e : compact_edges(grid, cr, st)) CHECK(cr.verts[e.from].b_side);
}

TEST_CASE("one matched pair yields one zero-slack matching edge") {
    PointSet ps;
    ps.a.push_back({0.5, 0.5});
    ps.b.push_back({0.5001, 0.5});
    GridIndex grid = build_grid(ps, 1.0, 0.5, 4);
    GeoState st{{0}, {0}, {0}, {0}};
    CompactResidual cr = build_compact(grid, st);
    auto edges = compact_edges(grid, cr, st);
    REQUIRE(edges.size() == 1);
    CHECK_FALSE(cr.verts[edges[0].from].b_side);
    CHECK(edges[0].slack == 0);
    CHECK(edges[0].weight == 0);
}

TEST_CASE("compact slacks equal the slack of represented point pairs") {
    Rng rng(107);
    PointSet ps = testing::random_points(rng, 40, false);
    double beta = oracle_bottleneck(ps).distance;
    GeoOptions opt;
    opt.on_phase = [&](int, const GridIndex& grid, const GeoState& st) {
        CompactResidual cr = build_compact(grid, st);
        auto edges = compact_edges(grid, cr, st);
        int checked = 0;
        for (const CompactEdge& e : edges) {
            if (checked >= 20) break;
            const CompactVertex& u = cr.verts[e.from];
            const CompactVertex& v = cr.verts[e.to];
            if (u.b_side) {
                // Find a represented non-matching pair and compare slacks.
                for (int b : u.members) {
                    bool done = false;
                    for (int a : v.members) {
                        if (st.mate_b[b] == a) continue;
                        int w = implicit_weight(grid, u.cell, v.cell);
                        CHECK(e.slack == w + st.dual_a[a] - st.dual_b[b]);
                        ++checked;
                        done = true;
                        break;
                    }
                    if (done) break;
                }
            } else {
                for (int a : u.members) {
                    if (st.mate_a[a] != -1 && cr.cluster_of_b[st.mate_a[a]] == e.to) {
                        CHECK(e.slack == 0);
                        ++checked;
                        break;
                    }
                }
            }
        }
    };
    geo_match(ps, beta * 1.1, 0.5, default_grid_r(40), opt);
}

TEST_CASE("preprocess solves each box against the oracle") {
    Rng rng(109);
    for (int it = 0; it < 6; ++it) {
        PointSet ps = testing::random_points(rng, 24, it % 2 == 0);
        GridIndex grid = build_grid(ps, 0.2, 0.5, 4);
        GeoState st = geo_preprocess(grid);

        std::map<std::pair<int, int>, std::vector<int>> boxes;
        for (int c = 0; c < grid.cell_count(); ++c) boxes[grid.box_of[c]].push_back(c);
        for (auto& [box, cells] : boxes) {
            std::vector<int> a_pts, b_pts;
            for (int c : cells) {
                a_pts.insert(a_pts.end(), grid.cell_a[c].begin(), grid.cell_a[c].end());
                b_pts.insert(b_pts.end(), grid.cell_b[c].begin(), grid.cell_b[c].end());
            }
            int matched = 0;
            for (int a : a_pts)
                if (st.mate_a[a] != -1) ++matched;

            std::vector<int> a_local(grid.pts.a.size(), -1), b_local(grid.pts.b.size(), -1);
            for (int i = 0; i < (int)a_pts.size(); ++i) a_local[a_pts[i]] = i;
            for (int i = 0; i < (int)b_pts.size(); ++i) b_local[b_pts[i]] = i;
            std::vector<EdgeInput> edges;
            for (int c : cells)
                for (int nb : grid.neighbors[c]) {
                    if (grid.box_of[nb] != box || nb < c) continue;
                    for (int a : grid.cell_a[c])
                        for (int b : grid.cell_b[nb]) edges.push_back({a_local[a], b_local[b], 0});
                    if (nb != c)
                        for (int a : grid.cell_a[nb])
                            for (int b : grid.cell_b[c])
                                edges.push_back({a_local[a], b_local[b], 0});
                }
            if (a_pts.empty() || b_pts.empty()) {
                CHECK(matched == 0);
                continue;
            }
            BipartiteGraph local = build_graph((int)a_pts.size(), (int)b_pts.size(), edges);
            CHECK(matched == brute_force_max_matching(local).matching_size);
        }
    }
}

TEST_CASE("geo_match at a generous delta is perfect, short at a hopeless one") {
    Rng rng(113);
    PointSet ps = testing::random_points(rng, 32, false);
    auto oracle = oracle_bottleneck(ps);

    double diameter = 0;
    for (const Point& p : ps.a)
        for (const Point& q : ps.b) diameter = std::max(diameter, dist(p, q));

    GeoRunResult wide = geo_match(ps, diameter, 0.5, default_grid_r(32));
    CHECK(wide.perfect);

    if (oracle.distance > 0) {
        GeoRunResult narrow = geo_match(ps, oracle.distance * 0.9, 0.5, default_grid_r(32));
        CHECK_FALSE(narrow.perfect);
    }
}

TEST_CASE("geo_match at a bracketing rung stays within the stretch bound") {
    Rng rng(127);
    for (double eps : {0.5, 0.25}) {
        PointSet ps = testing::random_points(rng, 64, false);
        double beta = oracle_bottleneck(ps).distance;
        auto ladder = delta_candidates(ps, eps);
        double delta = -1;
        for (double d : ladder)
            if (d >= beta) {
                delta = d;
                break;
            }
        REQUIRE(delta > 0);
        GeoRunResult run = geo_match(ps, delta, eps, default_grid_r(64));
        CHECK(run.perfect);
        CHECK(run.bottleneck <= (1 + eps / 3) * delta * (1 + 1e-12));
    }
}

TEST_CASE("bottleneck_match on coincident sets returns zero") {
    Rng rng(131);
    PointSet ps = testing::random_points(rng, 12, false);
    ps.b = ps.a;
    BottleneckResult r = bottleneck_match(ps, 0.5);
    CHECK(r.bottleneck == 0.0);
    for (int a = 0; a < 12; ++a) {
        REQUIRE(r.mate_a[a] != -1);
        CHECK(squared_dist(ps.a[a], ps.b[r.mate_a[a]]) == 0.0);
    }
}

TEST_CASE("bottleneck_match recovers the unique optimum of a two-pair instance") {
    PointSet ps;
    ps.a = {{0, 0}, {10, 0}};
    ps.b = {{1, 0}, {11, 0}};
    BottleneckResult r = bottleneck_match(ps, 0.25);
    CHECK(r.mate_a[0] == 0);
    CHECK(r.mate_a[1] == 1);
    CHECK(r.bottleneck == doctest::Approx(1.0));
}

TEST_CASE("bottleneck_match approximation and rung monotonicity") {
    Rng rng(137);
    for (int it = 0; it < 4; ++it) {
        double eps = it % 2 == 0 ? 0.5 : 0.25;
        PointSet ps = testing::random_points(rng, 64, it >= 2);
        double beta = oracle_bottleneck(ps).distance;
        BottleneckResult r = bottleneck_match(ps, eps);
        CHECK(r.bottleneck <= (1 + eps) * beta * (1 + 1e-12));
        CHECK(r.bottleneck >= beta * (1 - 1e-12));
        // No returned edge exceeds the stretch bound of the winning rung.
        CHECK(r.bottleneck <= (1 + eps / 3) * r.winning_delta * (1 + 1e-12));

        bool seen_perfect = false;
        for (const GeoRunResult& rung : r.rungs) {
            if (seen_perfect) CHECK(rung.perfect);
            if (rung.perfect) seen_perfect = true;
        }
        CHECK(seen_perfect);
    }
}

TEST_CASE("cluster spread and count stay within the bounds across runs") {
    Rng rng(139);
    for (int it = 0; it < 4; ++it) {
        PointSet ps = testing::random_points(rng, 48, it % 2 == 0);
        BottleneckResult r = bottleneck_match(ps, 0.5);
        for (const GeoRunResult& rung : r.rungs) {
            CHECK(rung.max_spread <= 2);
            CHECK(rung.max_clusters <= 3);
        }
    }
}

TEST_CASE("compact distances equal the best represented point distances") {
    Rng rng(149);
    for (int it = 0; it < 3; ++it) {
        PointSet ps = testing::random_points(rng, 20, false);
        double beta = oracle_bottleneck(ps).distance;
        GeoOptions opt;
        opt.on_phase = [&](int phase, const GridIndex& grid, const GeoState& st) {
            if (phase > 3) return;
            CompactResidual cr = build_compact(grid, st);
            CompactDijkstraResult cd = compact_dijkstra(grid, cr, st);
            PointDijkstraResult pd = point_residual_dijkstra(grid, st);
            for (int v = 0; v < (int)cr.verts.size(); ++v) {
                const CompactVertex& cv = cr.verts[v];
                int best = pd.inf;
                for (int p : cv.members)
                    best = std::min(best, cv.b_side ? pd.dist_b[p] : pd.dist_a[p]);
                int got = cd.dist[v] == cd.inf ? pd.inf : cd.dist[v];
                CHECK(got == best);
            }
        };
        geo_match(ps, beta * 1.05, 0.5, default_grid_r(20), opt);
    }
}
