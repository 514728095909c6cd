// conductor: simulate, sweep, solve and verify the heating-conductor game and
// the disjoint-rectangle labeling game.
//
// Exit codes: 0 success / reduction verified, 1 reduction mismatch, 2 usage
// or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "conductor/harness.hpp"
#include "conductor/reduction.hpp"
#include "conductor/solver.hpp"

namespace {

using namespace conductor;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string kind = "conductor";
    std::size_t n = 16;
    std::string strategy;
    std::string adversary = "adv-random";
    std::string rule = "unordered";
    std::size_t max_on = 1;
    std::size_t max_off = 1;
    std::optional<double> eta;
    std::string tie_break = "fixed";
    std::uint32_t k = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--kind", o.kind, "Game: conductor or rectangle")
        ->check(CLI::IsMember({"conductor", "rectangle"}))
        ->capture_default_str();
    cmd->add_option("-n,--n", o.n, "Passengers (conductor) or axis size m (rectangle)")->capture_default_str();
    cmd->add_option("--strategy", o.strategy,
                    "Conductor: majority, expw, expw-doubling, lookahead:<d>, random. "
                    "Labeler: label-potential, label-random");
    cmd->add_option("--adversary", o.adversary, "adv-random, adv-two-leaders, adv-fixed-pair")->capture_default_str();
    cmd->add_option("--rule", o.rule, "Conflict rule: off, unordered, ordered")
        ->check(CLI::IsMember({"off", "unordered", "ordered"}))
        ->capture_default_str();
    cmd->add_option("--max-on", o.max_on, "Cap on on-set size (first rectangle side)")->capture_default_str();
    cmd->add_option("--max-off", o.max_off, "Cap on off-set size (second rectangle side)")->capture_default_str();
    cmd->add_option("--eta", o.eta, "Learning rate override");
    cmd->add_option("--tie-break", o.tie_break, "fixed or random")
        ->check(CLI::IsMember({"fixed", "random"}))
        ->capture_default_str();
    cmd->add_option("-k,--k", o.k, "Rectangle game slack factor")->capture_default_str();
}

MatchConfig to_config(const CommonOptions& o) {
    MatchConfig cfg;
    cfg.kind = game_kind_from_string(o.kind);
    cfg.n = o.n;
    cfg.strategy = !o.strategy.empty() ? o.strategy
                                       : (cfg.kind == GameKind::conductor ? "expw-doubling" : "label-potential");
    cfg.adversary = o.adversary;
    cfg.rule = conflict_rule_from_string(o.rule);
    cfg.shape.max_on = o.max_on;
    cfg.shape.max_off = o.max_off;
    cfg.eta = o.eta;
    cfg.tie_break = o.tie_break == "random" ? TieBreak::random : TieBreak::fixed;
    cfg.k = o.k;
    return cfg;
}

void print_stop_summary(const GameTrace& trace) {
    std::cerr << "stops " << trace.stops.size() << "/" << trace.params.t << (trace.truncated ? " (truncated)" : "")
              << ", max unhappiness " << max_unhappiness(trace.final) << ", total " << sum_unhappiness(trace.final)
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator, solver and reduction checker for the conductor and rectangle games"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (TOML/INI); command-line flags override it");

    // simulate
    CommonOptions sim;
    std::size_t sim_t = 16;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "Play one match and write its trace");
    add_common(simulate, sim);
    simulate->add_option("-t,--t", sim_t, "Horizon in stops (rectangle game: T = ceil(sqrt t)^2)")
        ->capture_default_str();
    simulate->add_option("--seed", sim_seed, "Match seed")->capture_default_str();
    simulate->add_option("-o,--out", sim_out, "Trace file (default: stdout)");

    // sweep
    CommonOptions sw;
    std::vector<std::size_t> sw_horizons{16, 32, 64};
    std::size_t sw_reps = 1;
    std::uint64_t sw_seed = 0;
    std::string sw_out, sw_fit_out, sw_aggregate = "mean";
    bool sw_fit = false;
    unsigned sw_threads = 0;
    auto* sweep = app.add_subcommand("sweep", "Run horizons x repetitions and write a table");
    add_common(sweep, sw);
    sweep->add_option("--horizons", sw_horizons, "Sorted list of horizons")->capture_default_str();
    sweep->add_option("--reps", sw_reps, "Repetitions per horizon")->capture_default_str();
    sweep->add_option("--seed", sw_seed, "Base seed")->capture_default_str();
    sweep->add_option("-o,--out", sw_out, "Table file (default: stdout)");
    sweep->add_flag("--fit", sw_fit, "Also fit the growth exponent");
    sweep->add_option("--fit-out", sw_fit_out, "Fit result file (default: stderr)");
    sweep->add_option("--aggregate", sw_aggregate, "Fit over per-t means or all rows")
        ->check(CLI::IsMember({"mean", "rows"}))
        ->capture_default_str();
    sweep->add_option("--threads", sw_threads, "Worker threads (0 = all cores)")->capture_default_str();

    // solve
    std::string sv_game = "conductor", sv_rule = "unordered", sv_pv;
    std::size_t sv_n = 2, sv_t = 4, sv_max_on = 1, sv_max_off = 1, sv_m = 2;
    std::uint32_t sv_a = 1, sv_b = 1, sv_k = 1;
    bool sv_relabel = false;
    auto* solve = app.add_subcommand("solve", "Exact game value of a small instance");
    solve->add_option("--game", sv_game, "conductor or rectangle")
        ->check(CLI::IsMember({"conductor", "rectangle"}))
        ->capture_default_str();
    solve->add_option("-n,--n", sv_n, "Passengers (<= 5)")->capture_default_str();
    solve->add_option("-t,--t", sv_t, "Stops (<= 8)")->capture_default_str();
    solve->add_option("--rule", sv_rule, "Conflict rule: off, unordered, ordered")
        ->check(CLI::IsMember({"off", "unordered", "ordered"}))
        ->capture_default_str();
    solve->add_option("--max-on", sv_max_on, "Cap on on-set size")->capture_default_str();
    solve->add_option("--max-off", sv_max_off, "Cap on off-set size")->capture_default_str();
    solve->add_flag("--relabel", sv_relabel, "Merge positions equal up to passenger relabeling");
    solve->add_option("-m,--m", sv_m, "Rectangle board axis size (<= 3)")->capture_default_str();
    solve->add_option("-a,--a", sv_a, "Rectangle parameter a")->capture_default_str();
    solve->add_option("-b,--b", sv_b, "Rectangle parameter b (a*b <= 6)")->capture_default_str();
    solve->add_option("-k,--k", sv_k, "Rectangle slack factor")->capture_default_str();
    solve->add_option("--pv", sv_pv, "Write the principal variation as a trace file");

    // verify-reduction
    std::string vr_path;
    auto* verify = app.add_subcommand("verify-reduction", "Check unhappiness = hcount + vcount on a trace");
    verify->add_option("trace", vr_path, "Conductor trace file")->required();

    // fit
    std::string fit_path, fit_out, fit_aggregate = "mean";
    auto* fit = app.add_subcommand("fit", "Fit max_unhappiness ~ c * t^alpha to a sweep table");
    fit->add_option("table", fit_path, "Sweep table file")->required();
    fit->add_option("--aggregate", fit_aggregate, "Fit over per-t means or all rows")
        ->check(CLI::IsMember({"mean", "rows"}))
        ->capture_default_str();
    fit->add_option("-o,--out", fit_out, "Fit result file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) {
            auto cfg = to_config(sim);
            cfg.horizons = {sim_t};
            if (cfg.kind == GameKind::conductor) {
                const auto trace = run_match(cfg, sim_t, sim_seed);
                if (sim_out.empty())
                    write_trace(std::cout, trace);
                else
                    export_to_file(trace, ExportFormat::trace, sim_out);
                print_stop_summary(trace);
            } else {
                const auto match = run_rect_match(cfg, sim_t, sim_seed);
                if (sim_out.empty())
                    write_rect_trace(std::cout, match.trace);
                else
                    export_to_file(match.trace, ExportFormat::trace, sim_out);
                std::cerr << "moves " << match.trace.moves.size() << "/" << match.trace.params.moves()
                          << (match.truncated ? " (board exhausted)" : "") << ", max hcount "
                          << max_hcount(match.trace.final) << " (bound " << cfg.k * match.trace.params.a
                          << "), max vcount " << max_vcount(match.trace.final) << " (bound "
                          << cfg.k * match.trace.params.b << "), labeler " << (match.labeler_wins ? "wins" : "loses")
                          << "\n";
            }
            return kExitOk;
        }

        if (*sweep) {
            auto cfg = to_config(sw);
            cfg.horizons = sw_horizons;
            cfg.repetitions = sw_reps;
            cfg.base_seed = sw_seed;
            const auto rows = run_sweep(cfg, sw_threads);
            if (sw_out.empty())
                write_sweep(std::cout, rows);
            else
                export_to_file(std::span<const SweepRow>(rows), ExportFormat::table, sw_out);
            if (sw_fit) {
                const auto result =
                    fit_sweep(rows, sw_aggregate == "rows" ? SweepAggregate::rows : SweepAggregate::mean);
                if (sw_fit_out.empty())
                    write_fit(std::cerr, result);
                else
                    export_to_file(result, ExportFormat::table, sw_fit_out);
            }
            return kExitOk;
        }

        if (*solve) {
            if (sv_game == "conductor") {
                const auto rule = conflict_rule_from_string(sv_rule);
                const auto result = solve_conductor(sv_n, sv_t, rule, sv_max_on, sv_max_off, sv_relabel);
                std::cout << "game=conductor n=" << sv_n << " t=" << sv_t << " rule=" << sv_rule
                          << " max_on=" << sv_max_on << " max_off=" << sv_max_off << " value=" << result.value
                          << "\n";
                if (!sv_pv.empty()) {
                    GameTrace trace;
                    trace.params = TraceParams{sv_n, sv_t, rule, 0, "solver", "solver", {sv_max_on, sv_max_off, 0}};
                    trace.stops = result.principal_variation;
                    trace.final = replay(trace);
                    export_to_file(trace, ExportFormat::trace, sv_pv);
                }
            } else {
                const auto result = solve_rectangle(sv_m, sv_a, sv_b, sv_k);
                std::cout << "game=rectangle m=" << sv_m << " a=" << sv_a << " b=" << sv_b << " k=" << sv_k
                          << " value=" << result.value << " labeler_wins=" << (result.labeler_wins ? "true" : "false")
                          << "\n";
                if (!sv_pv.empty()) {
                    RectTrace trace;
                    trace.params = make_rect_params(sv_m, sv_a, sv_b, sv_k);
                    trace.moves = result.principal_variation;
                    trace.final = replay(trace);
                    export_to_file(trace, ExportFormat::trace, sv_pv);
                }
            }
            return kExitOk;
        }

        if (*verify) {
            const auto trace = import_trace(vr_path);
            const auto report = verify_equivalence(trace);
            if (report.ok()) {
                std::cout << "ok: " << report.rectangles << " rectangles, " << trace.params.n
                          << " passengers, avoidable unhappiness " << report.total_avoidable() << "\n";
                return kExitOk;
            }
            const auto& mm = *report.mismatch;
            std::cout << "mismatch: passenger " << mm.passenger << " unhappiness " << mm.unhappiness
                      << " != avoidable " << mm.avoidable << " + hcount " << mm.hcount << " + vcount " << mm.vcount
                      << "\n";
            return kExitMismatch;
        }

        if (*fit) {
            const auto rows = import_sweep(fit_path);
            const auto result = fit_sweep(rows, fit_aggregate == "rows" ? SweepAggregate::rows : SweepAggregate::mean);
            if (fit_out.empty())
                write_fit(std::cout, result);
            else
                export_to_file(result, ExportFormat::table, fit_out);
            return kExitOk;
        }
    } catch (const GameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
