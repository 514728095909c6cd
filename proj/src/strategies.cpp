#include "conductor/strategies.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace conductor {

LearningRate::LearningRate(double eta) : eta_(eta) {
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw GameError(ErrorKind::invalid_parameters, "learning rate must be positive and finite");
}

namespace {

void require_valid(const ConductorState& state, const StopRequest& req) {
    if (auto v = validate_request(state, req)) v->raise();
}

// Sum of exp(eta * (u - base)) over a side. Exponents are integer offsets
// times eta, so the same offsets give the same double.
double shifted_weight(const IdSet& side, const std::vector<std::uint32_t>& load, std::int64_t base, double eta) {
    double total = 0.0;
    side.for_each([&](std::size_t p) {
        total += std::exp(eta * static_cast<double>(static_cast<std::int64_t>(load[p]) - base));
    });
    return total;
}

std::int64_t max_over(const IdSet& a, const IdSet& b, const std::vector<std::uint32_t>& load_a,
                      const std::vector<std::uint32_t>& load_b) {
    std::int64_t best = 0;
    a.for_each([&](std::size_t p) { best = std::max<std::int64_t>(best, load_a[p]); });
    b.for_each([&](std::size_t p) { best = std::max<std::int64_t>(best, load_b[p]); });
    return best;
}

int sign_of(double diff) { return diff > 0.0 ? 1 : (diff < 0.0 ? -1 : 0); }

int majority_margin(const StopRequest& req) {
    const auto on = req.on_set.size();
    const auto off = req.off_set.size();
    return on > off ? 1 : (on < off ? -1 : 0);
}

std::vector<StopRequest> model_requests(const ConductorState& s, AdversaryModel model, const AdversaryShape& caps) {
    switch (model) {
        case AdversaryModel::two_leaders:
            if (auto r = adversary_two_leaders(s)) return {std::move(*r)};
            return {};
        case AdversaryModel::fixed_pair:
            if (auto r = adversary_fixed_pair(s)) return {std::move(*r)};
            return {};
        case AdversaryModel::exhaustive:
            return enumerate_requests(s, caps.max_on, caps.max_off);
    }
    return {};
}

std::uint32_t lookahead_value(const ConductorState& s, std::size_t depth, AdversaryModel model,
                              const AdversaryShape& caps) {
    if (depth == 0 || s.game_over()) return max_unhappiness(s);
    const auto requests = model_requests(s, model, caps);
    if (requests.empty()) return max_unhappiness(s);
    std::uint32_t best = 0;
    for (const auto& req : requests) {
        const auto off = lookahead_value(apply_stop(s, req, Decision::off), depth - 1, model, caps);
        const auto on = lookahead_value(apply_stop(s, req, Decision::on), depth - 1, model, caps);
        best = std::max(best, std::min(off, on));
    }
    return best;
}

// +1 when On scores strictly better (lower), -1 when Off does, 0 on a tie.
int lookahead_margin(const ConductorState& state, const StopRequest& req, std::size_t depth, AdversaryModel model,
                     const AdversaryShape& caps) {
    require_valid(state, req);
    if (state.game_over()) throw GameError(ErrorKind::game_over, "no stops left to decide");
    const std::size_t remaining = state.t_max - state.stops_played - 1;
    const std::size_t d = std::min(depth, remaining);
    const auto off = lookahead_value(apply_stop(state, req, Decision::off), d, model, caps);
    const auto on = lookahead_value(apply_stop(state, req, Decision::on), d, model, caps);
    return on < off ? 1 : (off < on ? -1 : 0);
}

// Draws `count` distinct ids below n that are not in `taken`, adding them to `into`.
void draw_distinct(Rng& rng, std::size_t n, std::size_t count, IdSet& taken, IdSet& into) {
    while (count > 0) {
        const auto id = static_cast<std::size_t>(uniform_below(rng, n));
        if (taken.contains(id)) continue;
        taken.insert(id);
        into.insert(id);
        --count;
    }
}

Decision from_margin(int margin, Decision on_tie) {
    return margin > 0 ? Decision::on : (margin < 0 ? Decision::off : on_tie);
}

}  // namespace

Decision decide_majority(const ConductorState& state, const StopRequest& req) {
    require_valid(state, req);
    return from_margin(majority_margin(req), Decision::off);
}

int exp_weights_margin(const ConductorState& state, const StopRequest& req, LearningRate lr) {
    require_valid(state, req);
    const auto base = max_over(req.on_set, req.off_set, state.unhappiness, state.unhappiness);
    const double on = shifted_weight(req.on_set, state.unhappiness, base, lr.eta());
    const double off = shifted_weight(req.off_set, state.unhappiness, base, lr.eta());
    return sign_of(on - off);
}

Decision decide_exp_weights(const ConductorState& state, const StopRequest& req, LearningRate lr) {
    return from_margin(exp_weights_margin(state, req, lr), Decision::on);
}

LearningRate default_learning_rate(std::size_t n, std::size_t t_max) {
    const double log_n = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
    const double horizon = static_cast<double>(std::max<std::size_t>(t_max, 1));
    return LearningRate(std::min(1.0, std::sqrt(log_n / horizon)));
}

LearningRate doubling_learning_rate(const ConductorState& state, LearningRate initial) {
    const auto m = max_unhappiness(state);
    const int epoch = m == 0 ? 0 : static_cast<int>(std::bit_width(m)) - 1;
    return LearningRate(std::ldexp(initial.eta(), -epoch));
}

Decision decide_exp_weights_doubling(const ConductorState& state, const StopRequest& req, LearningRate initial) {
    return decide_exp_weights(state, req, doubling_learning_rate(state, initial));
}

AdversaryModel adversary_model_from_string(std::string_view id) {
    if (id == "adv-two-leaders" || id == "two-leaders") return AdversaryModel::two_leaders;
    if (id == "adv-fixed-pair" || id == "fixed-pair") return AdversaryModel::fixed_pair;
    if (id == "adv-all" || id == "exhaustive") return AdversaryModel::exhaustive;
    throw GameError(ErrorKind::unknown_id, "unknown adversary model \"" + std::string(id) + "\"");
}

Decision decide_lookahead(const ConductorState& state, const StopRequest& req, std::size_t depth,
                          AdversaryModel model, const AdversaryShape& caps) {
    return from_margin(lookahead_margin(state, req, depth, model, caps), Decision::off);
}

std::optional<StopRequest> adversary_random(const ConductorState& state, const AdversaryShape& shape) {
    const std::size_t n = state.n;
    if (n < 2) return std::nullopt;
    Rng rng(mix_seed(shape.seed, state.stops_played, 0x5eedULL));
    const std::size_t cap_on = std::clamp<std::size_t>(shape.max_on, 1, n - 1);
    for (int attempt = 0; attempt < kRejectionAttempts; ++attempt) {
        const std::size_t on_size = 1 + uniform_below(rng, cap_on);
        const std::size_t cap_off = std::clamp<std::size_t>(shape.max_off, 1, n - on_size);
        const std::size_t off_size = 1 + uniform_below(rng, cap_off);
        StopRequest req(n);
        IdSet taken(n);
        draw_distinct(rng, n, on_size, taken, req.on_set);
        draw_distinct(rng, n, off_size, taken, req.off_set);
        if (!validate_request(state, req)) return req;
    }
    return std::nullopt;
}

std::optional<StopRequest> adversary_two_leaders(const ConductorState& state) {
    const std::size_t n = state.n;
    const auto& u = state.unhappiness;
    std::vector<PassengerId> order(n);
    std::iota(order.begin(), order.end(), PassengerId{0});
    std::stable_sort(order.begin(), order.end(), [&](PassengerId x, PassengerId y) { return u[x] > u[y]; });

    auto fresh = [&](PassengerId p, PassengerId q) {
        switch (state.rule) {
            case ConflictRule::off: return true;
            case ConflictRule::unordered: return !state.ledger.used_unordered(p, q);
            case ConflictRule::ordered: return !state.ledger.used_ordered(std::min(p, q), std::max(p, q));
        }
        return true;
    };

    struct Best {
        std::uint32_t lo, hi;
        PassengerPair ids;
    };
    auto better = [](const Best& c, const Best& b) {
        if (c.lo != b.lo) return c.lo > b.lo;
        if (c.hi != b.hi) return c.hi > b.hi;
        return c.ids < b.ids;
    };

    std::optional<Best> best;
    // order[j] is the less unhappy member of the pair (ties by id), so min(u) = u[order[j]].
    for (std::size_t j = 1; j < n; ++j) {
        const auto q = order[j];
        if (best && u[q] < best->lo) break;
        for (std::size_t i = 0; i < j; ++i) {
            const auto p = order[i];
            if (best && u[q] == best->lo && u[p] < best->hi) break;
            if (!fresh(p, q)) continue;
            Best cand{u[q], u[p], make_pair_unordered(p, q)};
            if (!best || better(cand, *best)) best = cand;
        }
    }
    if (!best) return std::nullopt;
    return StopRequest(n, {best->ids.first}, {best->ids.second});
}

std::optional<StopRequest> adversary_fixed_pair(const ConductorState& state) {
    if (state.n < 2) return std::nullopt;
    StopRequest req(state.n, {0}, {1});
    if (validate_request(state, req)) return std::nullopt;
    return req;
}

RectLabel label_potential(const RectGameState& state, const Rectangle& r, LearningRate lr) {
    if (auto v = validate_rectangle(state, r)) v->raise();
    // Labeling Horizontal raises every row term y in V by a factor e^eta, so
    // the potential grows by (e^eta - 1) * sum_{y in V} e^{eta*hcount[y]};
    // symmetrically for Vertical over U. Compare the two sums.
    const auto base = max_over(r.v_set, r.u_set, state.hcount, state.vcount);
    const double horizontal = shifted_weight(r.v_set, state.hcount, base, lr.eta());
    const double vertical = shifted_weight(r.u_set, state.vcount, base, lr.eta());
    return vertical < horizontal ? RectLabel::vertical : RectLabel::horizontal;
}

std::optional<Rectangle> rect_adversary_random(const RectGameState& state, const AdversaryShape& shape) {
    Rng rng(mix_seed(shape.seed, state.placed.size(), 0x7ec7ULL));
    const std::size_t cap_u = std::clamp<std::size_t>(shape.max_on, 1, state.m_u);
    const std::size_t cap_v = std::clamp<std::size_t>(shape.max_off, 1, state.m_v);
    for (int attempt = 0; attempt < kRejectionAttempts; ++attempt) {
        Rectangle r(IdSet(state.m_u), IdSet(state.m_v));
        IdSet taken_u(state.m_u), taken_v(state.m_v);
        draw_distinct(rng, state.m_u, 1 + uniform_below(rng, cap_u), taken_u, r.u_set);
        draw_distinct(rng, state.m_v, 1 + uniform_below(rng, cap_v), taken_v, r.v_set);
        if (!validate_rectangle(state, r)) return r;
    }
    return std::nullopt;
}

// ---- registry --------------------------------------------------------------

namespace {

Decision break_tie(int margin, Decision fixed, TieBreak mode, Rng& rng) {
    if (margin != 0) return from_margin(margin, fixed);
    if (mode == TieBreak::random) return coin(rng) ? Decision::on : Decision::off;
    return fixed;
}

}  // namespace

ConductorPolicy make_conductor(std::string_view id, const StrategyContext& ctx) {
    const auto mode = ctx.tie_break;
    Rng rng(mix_seed(ctx.seed, 0xc0dcULL, 1));
    if (id == "majority")
        return [mode, rng](const ConductorState& s, const StopRequest& r) mutable {
            require_valid(s, r);
            return break_tie(majority_margin(r), Decision::off, mode, rng);
        };
    if (id == "expw")
        return [mode, rng, eta = ctx.eta](const ConductorState& s, const StopRequest& r) mutable {
            const auto lr = eta ? LearningRate(*eta) : default_learning_rate(s.n, s.t_max);
            return break_tie(exp_weights_margin(s, r, lr), Decision::on, mode, rng);
        };
    if (id == "expw-doubling")
        return [mode, rng, initial = LearningRate(ctx.eta.value_or(1.0))](const ConductorState& s,
                                                                          const StopRequest& r) mutable {
            return break_tie(exp_weights_margin(s, r, doubling_learning_rate(s, initial)), Decision::on, mode, rng);
        };
    if (id == "random")
        return [rng](const ConductorState& s, const StopRequest& r) mutable {
            require_valid(s, r);
            return coin(rng) ? Decision::on : Decision::off;
        };
    if (id.starts_with("lookahead:")) {
        const auto digits = id.substr(std::string_view("lookahead:").size());
        std::size_t depth = 0;
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw GameError(ErrorKind::unknown_id, "lookahead depth must be a number: \"" + std::string(id) + "\"");
        depth = std::stoul(std::string(digits));
        return [mode, rng, depth, caps = ctx.shape](const ConductorState& s, const StopRequest& r) mutable {
            return break_tie(lookahead_margin(s, r, depth, AdversaryModel::two_leaders, caps), Decision::off, mode,
                             rng);
        };
    }
    throw GameError(ErrorKind::unknown_id, "unknown conductor strategy \"" + std::string(id) + "\"");
}

AdversaryPolicy make_adversary(std::string_view id, const StrategyContext& ctx) {
    if (id == "adv-random") {
        AdversaryShape shape = ctx.shape;
        shape.seed = mix_seed(ctx.seed, 0xad7ULL, 2);
        return [shape](const ConductorState& s) { return adversary_random(s, shape); };
    }
    if (id == "adv-two-leaders") return [](const ConductorState& s) { return adversary_two_leaders(s); };
    if (id == "adv-fixed-pair") return [](const ConductorState& s) { return adversary_fixed_pair(s); };
    throw GameError(ErrorKind::unknown_id, "unknown adversary \"" + std::string(id) + "\"");
}

LabelerPolicy make_labeler(std::string_view id, const StrategyContext& ctx) {
    if (id == "label-potential")
        return [eta = LearningRate(ctx.eta.value_or(1.0))](const RectGameState& s, const Rectangle& r) {
            return label_potential(s, r, eta);
        };
    if (id == "label-random")
        return [rng = Rng(mix_seed(ctx.seed, 0x1abeULL, 3))](const RectGameState& s, const Rectangle& r) mutable {
            if (auto v = validate_rectangle(s, r)) v->raise();
            return coin(rng) ? RectLabel::horizontal : RectLabel::vertical;
        };
    throw GameError(ErrorKind::unknown_id, "unknown labeler \"" + std::string(id) + "\"");
}

RectAdversaryPolicy make_rect_adversary(std::string_view id, const StrategyContext& ctx) {
    if (id == "adv-random") {
        AdversaryShape shape = ctx.shape;
        shape.seed = mix_seed(ctx.seed, 0xad7ULL, 4);
        return [shape](const RectGameState& s) { return rect_adversary_random(s, shape); };
    }
    throw GameError(ErrorKind::unknown_id, "unknown rectangle adversary \"" + std::string(id) + "\"");
}

}  // namespace conductor
