#include "conductor/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <map>
#include <string>
#include <thread>

#include "conductor/random.hpp"

namespace conductor {

const char* to_string(GameKind kind) { return kind == GameKind::conductor ? "conductor" : "rectangle"; }

GameKind game_kind_from_string(std::string_view s) {
    if (s == "conductor") return GameKind::conductor;
    if (s == "rectangle") return GameKind::rectangle;
    throw GameError(ErrorKind::parse_error, "game kind must be \"conductor\" or \"rectangle\"");
}

void MatchConfig::validate() const {
    auto fail = [](const std::string& what) { throw GameError(ErrorKind::invalid_parameters, what); };
    if (n == 0) fail("n must be at least 1");
    if (horizons.empty()) fail("at least one horizon is required");
    if (std::any_of(horizons.begin(), horizons.end(), [](std::size_t t) { return t == 0; }))
        fail("horizons must be positive");
    if (!std::is_sorted(horizons.begin(), horizons.end())) fail("horizons must be sorted");
    if (repetitions == 0) fail("repetitions must be at least 1");
    if (shape.max_on == 0 || shape.max_off == 0) fail("adversary caps must be at least 1");
    if (k == 0) fail("k must be at least 1");
    if (eta) LearningRate{*eta};
}

namespace {

StrategyContext context_for(const MatchConfig& cfg, std::uint64_t seed) {
    return StrategyContext{seed, cfg.shape, cfg.eta, cfg.tie_break};
}

}  // namespace

GameTrace run_match(const MatchConfig& cfg, std::size_t t, std::uint64_t seed) {
    cfg.validate();
    const auto ctx = context_for(cfg, seed);
    auto decide = make_conductor(cfg.strategy, ctx);
    auto propose = make_adversary(cfg.adversary, ctx);

    GameTrace trace;
    trace.params = TraceParams{cfg.n, t, cfg.rule, seed, cfg.strategy, cfg.adversary, cfg.shape};
    auto state = new_game(cfg.n, t, cfg.rule);
    while (!state.game_over()) {
        auto req = propose(state);
        if (!req) {
            trace.truncated = true;
            break;
        }
        const auto d = decide(state, *req);
        state = apply_stop(std::move(state), *req, d);
        trace.stops.push_back(StopRecord{std::move(*req), d});
    }
    trace.final = std::move(state);
    return trace;
}

RectMatch run_rect_match(const MatchConfig& cfg, std::size_t t, std::uint64_t seed) {
    cfg.validate();
    const auto ctx = context_for(cfg, seed);
    auto label = make_labeler(cfg.strategy, ctx);
    auto propose = make_rect_adversary(cfg.adversary, ctx);

    RectMatch out;
    const auto side = ceil_sqrt(t);
    out.trace.params = make_rect_params(cfg.n, side, side, cfg.k);
    auto state = new_rect_game(out.trace.params);
    const auto total = out.trace.params.moves();
    while (state.placed.size() < total) {
        auto r = propose(state);
        if (!r) {
            out.truncated = true;
            break;
        }
        const auto l = label(state, *r);
        state = apply_label(std::move(state), *r, l);
        out.trace.moves.emplace_back(std::move(*r), l);
    }
    out.labeler_wins = within_bounds(state, out.trace.params);
    out.trace.final = std::move(state);
    return out;
}

namespace {

SweepRow sweep_row(const MatchConfig& cfg, std::size_t t, std::uint64_t seed) {
    SweepRow row{t, seed, cfg.strategy, cfg.adversary, 0, 0, false};
    if (cfg.kind == GameKind::conductor) {
        const auto trace = run_match(cfg, t, seed);
        row.max_unhappiness = max_unhappiness(trace.final);
        row.sum_unhappiness = sum_unhappiness(trace.final);
        row.truncated = trace.truncated;
    } else {
        const auto match = run_rect_match(cfg, t, seed);
        const auto& s = match.trace.final;
        row.max_unhappiness = std::max(max_hcount(s), max_vcount(s));
        for (auto h : s.hcount) row.sum_unhappiness += h;
        for (auto v : s.vcount) row.sum_unhappiness += v;
        row.truncated = match.truncated;
    }
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const MatchConfig& cfg, unsigned threads) {
    cfg.validate();
    std::vector<std::pair<std::size_t, std::uint64_t>> jobs;
    for (auto t : cfg.horizons)
        for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) jobs.emplace_back(t, mix_seed(cfg.base_seed, t, rep));

    std::vector<SweepRow> rows(jobs.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            if (failed) return;
            try {
                rows[i] = sweep_row(cfg, jobs[i].first, jobs[i].second);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return rows;
}

FitResult fit_exponent(std::span<const std::pair<double, double>> points) {
    FitResult fit;
    std::vector<std::pair<double, double>> logs;
    for (auto [t, m] : points) {
        if (!(m >= 1.0) || !(t > 0.0)) {
            ++fit.dropped_zero;
            continue;
        }
        logs.emplace_back(std::log(t), std::log(m));
    }
    std::vector<double> xs;
    for (auto [x, y] : logs) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    if (std::unique(xs.begin(), xs.end()) - xs.begin() < 2)
        throw GameError(ErrorKind::insufficient_points, "need at least two points with distinct t and M >= 1");

    const double count = static_cast<double>(logs.size());
    double mx = 0, my = 0;
    for (auto [x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= count;
    my /= count;
    double sxx = 0, sxy = 0;
    for (auto [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    fit.alpha = sxy / sxx;
    const double intercept = my - fit.alpha * mx;
    fit.c = std::exp(intercept);
    double sq = 0;
    for (auto [x, y] : logs) {
        const double r = y - (fit.alpha * x + intercept);
        sq += r * r;
    }
    fit.residual = std::sqrt(sq / count);
    fit.points_used = logs.size();
    return fit;
}

FitResult fit_sweep(std::span<const SweepRow> rows, SweepAggregate how) {
    std::vector<std::pair<double, double>> points;
    if (how == SweepAggregate::rows) {
        for (const auto& r : rows)
            points.emplace_back(static_cast<double>(r.t), static_cast<double>(r.max_unhappiness));
    } else {
        std::map<std::size_t, std::pair<double, std::size_t>> by_t;
        for (const auto& r : rows) {
            auto& [total, count] = by_t[r.t];
            total += static_cast<double>(r.max_unhappiness);
            ++count;
        }
        for (const auto& [t, acc] : by_t)
            points.emplace_back(static_cast<double>(t), acc.first / static_cast<double>(acc.second));
    }
    return fit_exponent(points);
}

}  // namespace conductor
