#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "zom/baseline.hpp"
#include "zom/gen.hpp"
#include "zom/geo.hpp"
#include "zom/io.hpp"
#include "zom/matcher.hpp"
#include "zom/rng.hpp"
#include "zom/separator.hpp"
#include "zom/state.hpp"

namespace zom {

namespace {

using nlohmann::json;

constexpr const char* kSchema = "zom-stats-v1";

std::uint64_t env_seed(std::uint64_t fallback) {
    if (const char* s = std::getenv("ZOM_SEED")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(s, &end, 10);
        if (end && *end == '\0') return (std::uint64_t)v;
        throw input_error("ZOM_SEED is not an integer");
    }
    return fallback;
}

void write_stats(const json& record, const std::string& stats_path, std::ostream& out) {
    if (stats_path.empty()) {
        out << record.dump() << '\n';
    } else {
        std::ofstream f(stats_path);
        if (!f) throw input_error("cannot write stats file: " + stats_path);
        f << record.dump() << '\n';
    }
}

json phase_json(const PhaseStats& ps) {
    return json{{"phase", ps.phase},
                {"ell", ps.ell},
                {"y_max", ps.y_max},
                {"paths", ps.augmenting_paths},
                {"affected", ps.affected_pieces},
                {"path_weights", ps.path_weights}};
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

int cmd_match_graph(const std::string& file, const std::string& weights, bool trace,
                    bool timings, const std::string& stats_path, std::uint64_t seed,
                    std::ostream& out) {
    BipartiteGraph g = parse_graph_file(file);
    json instance{{"file", file}, {"n_a", g.n_a}, {"n_b", g.n_b}, {"m", g.edges.size()}};

    if (!weights.empty() && weights != "file") {
        if (weights.rfind("separator:", 0) != 0)
            throw input_error("--weights must be 'file' or 'separator:R'");
        int r = std::stoi(weights.substr(10));
        WeightAssignment wa = assign_weights_recursive(g, r, grid_graph_separator);
        g = reweighted(g, wa.weight);
        instance["weights"] = weights;
        instance["separator_steps"] = wa.steps;
        instance["separator_vertices"] = wa.separator_vertices;
    } else {
        instance["weights"] = "file";
    }

    Timer timer;
    PieceDecomposition pieces = compute_pieces(g);
    MatchResult r = run_matcher(g, pieces);

    json record{{"schema", kSchema},
                {"command", "match-graph"},
                {"algorithm", "zero-one-phase-matcher"},
                {"seed", seed},
                {"instance", instance},
                {"matching_size", r.matching_size},
                {"w", r.matching_weight},
                {"preprocessed_size", r.preprocessed_size},
                {"phases", r.total_phases},
                {"augmenting_paths", r.total_augmenting_paths},
                {"sum_affected", r.total_affected},
                {"sum_path_weights", r.sum_path_weights},
                {"pieces", pieces.piece_count},
                {"max_piece_vertices", pieces.max_piece_vertices},
                {"max_piece_edges", pieces.max_piece_edges},
                {"ledger_warnings", r.ledger_warnings}};
    if (trace) {
        json phases = json::array();
        for (const PhaseStats& ps : r.phases) phases.push_back(phase_json(ps));
        record["per_phase"] = phases;
    }
    if (timings) record["wall_ms"] = timer.ms();
    write_stats(record, stats_path, out);
    return 0;
}

int cmd_match_bottleneck(const std::string& file, double eps, int r_param, bool trace,
                         bool timings, const std::string& stats_path, std::uint64_t seed,
                         std::ostream& out) {
    PointSet ps = parse_points_file(file);
    if (ps.a.size() != ps.b.size())
        throw input_error("bottleneck matching needs |A| = |B|, got " +
                          std::to_string(ps.a.size()) + " and " + std::to_string(ps.b.size()));
    Timer timer;
    GeoOptions opt;
    opt.r = r_param;
    BottleneckResult res = bottleneck_match(ps, eps, opt);

    json rungs = json::array();
    for (const GeoRunResult& rung : res.rungs) {
        json rj{{"delta", rung.delta},
                {"perfect", rung.perfect},
                {"bottleneck", rung.bottleneck},
                {"phases", rung.total_phases},
                {"augmenting_paths", rung.total_augmenting_paths},
                {"sum_affected", rung.total_affected},
                {"sum_path_weights", rung.sum_path_weights},
                {"w", rung.matching_weight},
                {"max_spread", rung.max_spread},
                {"max_clusters", rung.max_clusters}};
        if (trace) {
            json phases = json::array();
            for (const PhaseStats& p : rung.phases) phases.push_back(phase_json(p));
            rj["per_phase"] = phases;
        }
        rungs.push_back(rj);
    }
    json record{{"schema", kSchema},
                {"command", "match-bottleneck"},
                {"algorithm", "grid-compact-phase-matcher"},
                {"seed", seed},
                {"instance", json{{"file", file}, {"n", ps.a.size()}}},
                {"epsilon", eps},
                {"r", res.r},
                {"bottleneck", res.bottleneck},
                {"winning_delta", res.winning_delta},
                {"rungs", rungs}};
    if (timings) record["wall_ms"] = timer.ms();
    write_stats(record, stats_path, out);
    return 0;
}

void write_instance(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream f(out_path);
        if (!f) throw input_error("cannot write file: " + out_path);
        f << text;
    }
}

int cmd_verify(int count, std::uint64_t seed, const std::string& mode, std::ostream& out) {
    int ok = 0, geo_ok = 0, geo_total = 0;
    if (mode == "graph" || mode == "all") {
        for (int i = 0; i < count; ++i) {
            Rng rng(seed + (std::uint64_t)i * 7919);
            int n_a = rng.range(2, 40), n_b = rng.range(2, 40);
            double p1 = std::vector<double>{0.1, 0.5, 0.9}[i % 3];
            BipartiteGraph g =
                gen_random_graph(seed + (std::uint64_t)i * 7919 + 1, n_a, n_b, rng.range(0, 200), p1);
            PieceDecomposition pieces = compute_pieces(g);

            bool good = true;
            MatcherOptions opt;
            opt.on_stage = [&](Stage stage, const BipartiteGraph& gg, const MatchState& st) {
                if (stage == Stage::AfterStage2 && admissible_augmenting_path_exists(gg, st))
                    good = false;
                if (gg.num_vertices() <= 40 && admissible_positive_cycle_exists(gg, st))
                    good = false;
            };
            MatchResult r = run_matcher(g, pieces, opt);
            if (r.matching_size != brute_force_max_matching(g).matching_size) good = false;
            if (r.total_phases > 3 * (int)std::ceil(std::sqrt((double)r.matching_weight)))
                good = false;
            if (good) ++ok;
        }
        out << ok << "/" << count << " oracle-equal\n";
    }
    if (mode == "geo" || mode == "all") {
        geo_total = std::max(1, count / 10);
        for (int i = 0; i < geo_total; ++i) {
            PointSet ps = gen_points(seed + 31 * (std::uint64_t)i, 24,
                                     i % 2 == 0 ? PointDistribution::Uniform
                                                : PointDistribution::Clustered);
            double eps = i % 2 == 0 ? 0.5 : 0.25;
            BottleneckResult r = bottleneck_match(ps, eps);
            double beta = oracle_bottleneck(ps).distance;
            bool good = r.bottleneck <= (1 + eps) * beta * (1 + 1e-12);
            for (const GeoRunResult& rung : r.rungs)
                if (rung.max_spread > 2 || rung.max_clusters > 3) good = false;
            if (good) ++geo_ok;
        }
        out << geo_ok << "/" << geo_total << " bottleneck-within-bound\n";
    }
    bool pass = true;
    if (mode == "graph" || mode == "all") pass = pass && ok == count;
    if (mode == "geo" || mode == "all") pass = pass && geo_ok == geo_total;
    return pass ? 0 : 2;
}

int cmd_bench(const std::string& mode, std::vector<int> sizes, std::uint64_t seed, double eps,
              int reps, std::ostream& out) {
    if (mode == "ones") {
        if (sizes.empty()) sizes = {32, 64, 128, 256};
        out << "n\tm\tw\tsqrt_w\tphases\tbound\tok\n";
        bool all_ok = true;
        for (int n : sizes) {
            BipartiteGraph g = gen_random_graph(seed + n, n, n, 4 * n, 1.0);
            PieceDecomposition pieces = compute_pieces(g);
            MatchResult r = run_matcher(g, pieces);
            int bound = 3 * (int)std::ceil(std::sqrt((double)r.matching_weight));
            bool row_ok = r.total_phases <= bound;
            all_ok = all_ok && row_ok;
            out << n << '\t' << g.edges.size() << '\t' << r.matching_weight << '\t'
                << std::sqrt((double)r.matching_weight) << '\t' << r.total_phases << '\t' << bound
                << '\t' << (row_ok ? "yes" : "NO") << '\n';
        }
        return all_ok ? 0 : 2;
    }
    if (mode == "geo") {
        if (sizes.empty()) sizes = {64, 128, 256};
        out << "n\tw_med\tsqrt_w\tphases_med\tratio\n";
        std::vector<double> ratios;
        for (int n : sizes) {
            std::vector<int> lambdas, ws;
            for (int rep = 0; rep < reps; ++rep) {
                PointSet ps = gen_points(seed + (std::uint64_t)n * 131 + rep, n,
                                         PointDistribution::Uniform);
                BottleneckResult r = bottleneck_match(ps, eps);
                // Collect the winning rung's phase count and weight.
                for (const GeoRunResult& rung : r.rungs)
                    if (rung.perfect && rung.delta == r.winning_delta) {
                        lambdas.push_back(rung.total_phases);
                        ws.push_back(rung.matching_weight);
                        break;
                    }
            }
            std::sort(lambdas.begin(), lambdas.end());
            std::sort(ws.begin(), ws.end());
            int lam = lambdas[lambdas.size() / 2];
            int w = ws[ws.size() / 2];
            double ratio = lam / std::sqrt((double)std::max(1, w));
            ratios.push_back(ratio);
            out << n << '\t' << w << '\t' << std::sqrt((double)std::max(1, w)) << '\t' << lam
                << '\t' << ratio << '\n';
        }
        // Trend: the phase count must not outgrow sqrt(w) by more than 2x
        // between consecutive sizes.
        bool ok = true;
        for (std::size_t i = 1; i < ratios.size(); ++i)
            if (ratios[i] > 2.0 * std::max(ratios[i - 1], 1e-9)) ok = false;
        out << (ok ? "trend ok" : "trend VIOLATION") << '\n';
        return ok ? 0 : 2;
    }
    throw input_error("unknown bench mode: " + mode);
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"zom: 0/1-weighted bipartite matching engine"};
    app.require_subcommand(1);

    std::uint64_t seed = 12345;
    app.add_option("--seed", seed, "base PRNG seed (ZOM_SEED overrides)");

    // match-graph
    auto* mg = app.add_subcommand("match-graph", "maximum matching on a 0/1-weighted graph");
    std::string mg_file, mg_weights = "file", mg_stats;
    bool mg_trace = false, mg_timings = false;
    mg->add_option("file", mg_file, "graph file")->required();
    mg->add_option("--weights", mg_weights, "'file' or 'separator:R'");
    mg->add_flag("--trace", mg_trace, "include per-phase stats");
    mg->add_flag("--timings", mg_timings, "include wall time (breaks byte determinism)");
    mg->add_option("--stats", mg_stats, "write the stats record to a file");

    // match-bottleneck
    auto* mb = app.add_subcommand("match-bottleneck", "approximate bottleneck matching");
    std::string mb_file, mb_stats;
    double mb_eps = 0.25;
    int mb_r = -1;
    bool mb_trace = false, mb_timings = false;
    mb->add_option("file", mb_file, "points file")->required();
    mb->add_option("--epsilon", mb_eps, "approximation parameter")->required();
    mb->add_option("--r", mb_r, "coarse grid parameter (perfect square)");
    mb->add_flag("--trace", mb_trace, "include per-phase stats");
    mb->add_flag("--timings", mb_timings, "include wall time");
    mb->add_option("--stats", mb_stats, "write the stats record to a file");

    // gen
    auto* gen = app.add_subcommand("gen", "emit seeded instances");
    auto* gg = gen->add_subcommand("graph", "random 0/1 graph");
    int gg_na = 20, gg_nb = 20, gg_m = 80;
    double gg_p1 = 0.5;
    std::string gg_out;
    gg->add_option("--na", gg_na);
    gg->add_option("--nb", gg_nb);
    gg->add_option("--m", gg_m);
    gg->add_option("--p1", gg_p1, "weight-1 probability");
    gg->add_option("-o,--out", gg_out);
    auto* gl = gen->add_subcommand("lattice", "rows x cols lattice");
    int gl_rows = 8, gl_cols = 8;
    std::string gl_out;
    gl->add_option("--rows", gl_rows);
    gl->add_option("--cols", gl_cols);
    gl->add_option("-o,--out", gl_out);
    auto* gp = gen->add_subcommand("points", "random point set");
    int gp_n = 64;
    std::string gp_dist = "uniform", gp_out;
    gp->add_option("--n", gp_n, "points per side");
    gp->add_option("--dist", gp_dist, "uniform or clustered");
    gp->add_option("-o,--out", gp_out);
    gen->require_subcommand(1);

    // verify
    auto* vf = app.add_subcommand("verify", "cross-check against the oracles");
    int vf_count = 50;
    std::string vf_mode = "graph";
    vf->add_option("--count", vf_count, "number of seeded instances");
    vf->add_option("--mode", vf_mode, "graph, geo or all");

    // bench
    auto* bn = app.add_subcommand("bench", "phase-count tables");
    std::string bn_mode = "ones";
    std::vector<int> bn_sizes;
    double bn_eps = 0.25;
    int bn_reps = 5;
    bn->add_option("--mode", bn_mode, "ones or geo");
    bn->add_option("--sizes", bn_sizes, "instance sizes")->delimiter(',');
    bn->add_option("--epsilon", bn_eps, "epsilon for geo mode");
    bn->add_option("--reps", bn_reps, "instances per size in geo mode");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << '\n';
        return 1;
    }

    try {
        seed = env_seed(seed);
        if (mg->parsed())
            return cmd_match_graph(mg_file, mg_weights, mg_trace, mg_timings, mg_stats, seed, out);
        if (mb->parsed())
            return cmd_match_bottleneck(mb_file, mb_eps, mb_r, mb_trace, mb_timings, mb_stats,
                                        seed, out);
        if (gen->parsed()) {
            if (gg->parsed())
                write_instance(graph_to_string(gen_random_graph(seed, gg_na, gg_nb, gg_m, gg_p1)),
                               gg_out, out);
            else if (gl->parsed())
                write_instance(graph_to_string(gen_lattice(gl_rows, gl_cols)), gl_out, out);
            else
                write_instance(
                    points_to_string(gen_points(seed, gp_n, point_distribution_from(gp_dist))),
                    gp_out, out);
            return 0;
        }
        if (vf->parsed()) return cmd_verify(vf_count, seed, vf_mode, out);
        if (bn->parsed()) return cmd_bench(bn_mode, bn_sizes, seed, bn_eps, bn_reps, out);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const invariant_error& e) {
        err << "invariant failure: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

} // namespace zom
