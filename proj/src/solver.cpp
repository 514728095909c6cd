#include "conductor/solver.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace conductor {

namespace {

// Bit layout: [0,20) unhappiness, [20,40) ledger, [40,44) stops remaining.
constexpr int kLedgerShift = 20;
constexpr int kRemainingShift = 40;

std::uint64_t encode(const ConductorState& s, const std::vector<std::size_t>& perm) {
    // perm[new_index] = old passenger id
    const std::size_t n = s.n;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) bits |= std::uint64_t{s.unhappiness[perm[i]]} << (4 * i);
    int bit = kLedgerShift;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (s.rule == ConflictRule::ordered) {
                if (s.ledger.used_ordered(perm[i], perm[j])) bits |= std::uint64_t{1} << bit;
                ++bit;
            } else if (s.rule == ConflictRule::unordered && i < j) {
                if (s.ledger.used_unordered(perm[i], perm[j])) bits |= std::uint64_t{1} << bit;
                ++bit;
            }
        }
    bits |= std::uint64_t(s.t_max - s.stops_played) << kRemainingShift;
    return bits;
}

void check_conductor_limits(std::size_t n, std::size_t t) {
    if (n == 0) throw GameError(ErrorKind::invalid_parameters, "passenger count must be at least 1");
    if (n > kMaxSolvePassengers || t > kMaxSolveStops)
        throw GameError(ErrorKind::instance_too_large, "exact solving is limited to n <= " +
                                                           std::to_string(kMaxSolvePassengers) + " and t <= " +
                                                           std::to_string(kMaxSolveStops));
}

}  // namespace

SolveKey canonicalize(const ConductorState& state, bool relabel) {
    const std::size_t n = state.n;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    if (!relabel) return SolveKey{encode(state, perm)};

    std::vector<std::pair<std::uint32_t, std::size_t>> invariant(n);
    for (std::size_t p = 0; p < n; ++p) invariant[p] = {state.unhappiness[p], state.ledger.degree(p)};
    std::sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return invariant[x] < invariant[y]; });

    // Tie classes: maximal runs of equal invariants in the sorted order.
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i + 1;
        while (j < n && invariant[perm[j]] == invariant[perm[i]]) ++j;
        if (j - i > 1) classes.emplace_back(i, j);
        i = j;
    }
    for (auto [lo, hi] : classes) std::sort(perm.begin() + lo, perm.begin() + hi);

    // Odometer over the permutations of every tie class.
    std::uint64_t best = encode(state, perm);
    for (;;) {
        std::size_t c = 0;
        for (; c < classes.size(); ++c) {
            auto [lo, hi] = classes[c];
            if (std::next_permutation(perm.begin() + lo, perm.begin() + hi)) break;
        }
        if (c == classes.size()) break;
        best = std::min(best, encode(state, perm));
    }
    return SolveKey{best};
}

ConductorSolver::ConductorSolver(std::size_t n, std::size_t t, ConflictRule rule, std::size_t max_on,
                                 std::size_t max_off, bool relabel)
    : n_(n), t_(t), rule_(rule), max_on_(max_on), max_off_(max_off), relabel_(relabel) {
    check_conductor_limits(n, t);
}

std::uint32_t ConductorSolver::after(const ConductorState& state, const StopRequest& req) {
    const auto floor = max_unhappiness(state);
    const auto off = value(apply_stop(state, req, Decision::off));
    if (off == floor) return off;
    return std::min(off, value(apply_stop(state, req, Decision::on)));
}

std::uint32_t ConductorSolver::value(const ConductorState& state) {
    const auto current = max_unhappiness(state);
    if (state.game_over()) return current;
    const auto key = canonicalize(state, relabel_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const auto ceiling = current + static_cast<std::uint32_t>(state.t_max - state.stops_played);
    std::uint32_t best = current;
    for (const auto& req : enumerate_requests(state, max_on_, max_off_)) {
        best = std::max(best, after(state, req));
        if (best == ceiling) break;
    }
    memo_.emplace(key, static_cast<std::uint8_t>(best));
    return best;
}

std::optional<StopRequest> ConductorSolver::best_request(const ConductorState& state) {
    if (state.game_over()) return std::nullopt;
    std::optional<StopRequest> arg;
    std::uint32_t best = 0;
    for (auto& req : enumerate_requests(state, max_on_, max_off_)) {
        const auto v = after(state, req);
        if (!arg || v > best) {
            best = v;
            arg = std::move(req);
        }
    }
    return arg;
}

Decision ConductorSolver::best_decision(const ConductorState& state, const StopRequest& req) {
    const auto off = value(apply_stop(state, req, Decision::off));
    const auto on = value(apply_stop(state, req, Decision::on));
    return on < off ? Decision::on : Decision::off;
}

GameValue ConductorSolver::solve() {
    auto state = initial();
    GameValue out;
    out.value = value(state);
    while (auto req = best_request(state)) {
        const auto d = best_decision(state, *req);
        out.principal_variation.push_back(StopRecord{*req, d});
        state = apply_stop(std::move(state), *req, d);
    }
    return out;
}

GameValue solve_conductor(std::size_t n, std::size_t t, ConflictRule rule, std::size_t max_on, std::size_t max_off,
                          bool relabel) {
    return ConductorSolver(n, t, rule, max_on, max_off, relabel).solve();
}

// ---- rectangle game ----------------------------------------------------------

namespace {

std::uint32_t ceil_div(std::uint32_t x, std::uint32_t y) { return (x + y - 1) / y; }

}  // namespace

std::uint32_t rect_load(const RectGameState& state, std::uint32_t a, std::uint32_t b) {
    return std::max(ceil_div(max_hcount(state), a), ceil_div(max_vcount(state), b));
}

RectSolver::RectSolver(std::size_t m, std::uint32_t a, std::uint32_t b) : m_(m), a_(a), b_(b) {
    if (m == 0 || a == 0 || b == 0) throw GameError(ErrorKind::invalid_parameters, "m, a and b must be at least 1");
    if (m > kMaxSolveAxis || std::uint64_t{a} * b > kMaxSolveMoves)
        throw GameError(ErrorKind::instance_too_large, "exact rectangle solving is limited to m <= " +
                                                           std::to_string(kMaxSolveAxis) + " and a*b <= " +
                                                           std::to_string(kMaxSolveMoves));
    const std::uint32_t full = (1u << m) - 1;
    for (std::uint32_t u = 1; u <= full; ++u)
        for (std::uint32_t v = 1; v <= full; ++v) {
            std::uint32_t cells = 0;
            for (std::size_t x = 0; x < m; ++x)
                for (std::size_t y = 0; y < m; ++y)
                    if ((u >> x & 1u) && (v >> y & 1u)) cells |= 1u << (x * m + y);
            rects_.emplace_back(u, v);
            cells_.push_back(cells);
        }
}

RectSolver::Compact RectSolver::compact(const RectGameState& state) const {
    if (state.m_u != m_ || state.m_v != m_)
        throw GameError(ErrorKind::invalid_parameters, "state board size does not match the solver");
    Compact c;
    for (const auto& [r, l] : state.placed)
        r.u_set.for_each([&](std::size_t x) {
            r.v_set.for_each([&](std::size_t y) { c.covered |= 1u << (x * m_ + y); });
        });
    for (std::size_t i = 0; i < m_; ++i) {
        c.h[i] = state.hcount[i];
        c.v[i] = state.vcount[i];
    }
    const std::uint64_t total = std::uint64_t{a_} * b_;
    c.moves_left = static_cast<std::uint32_t>(total - std::min<std::uint64_t>(total, state.placed.size()));
    return c;
}

std::uint32_t RectSolver::load(const Compact& c) const {
    std::uint32_t h = 0, v = 0;
    for (std::size_t i = 0; i < m_; ++i) {
        h = std::max(h, c.h[i]);
        v = std::max(v, c.v[i]);
    }
    return std::max(ceil_div(h, a_), ceil_div(v, b_));
}

std::uint32_t RectSolver::label_value(const Compact& c, std::size_t rect_index, RectLabel l) {
    Compact next = c;
    next.covered |= cells_[rect_index];
    --next.moves_left;
    const auto [u, v] = rects_[rect_index];
    for (std::size_t i = 0; i < m_; ++i) {
        if (l == RectLabel::horizontal && (v >> i & 1u)) ++next.h[i];
        if (l == RectLabel::vertical && (u >> i & 1u)) ++next.v[i];
    }
    return search(next);
}

std::uint32_t RectSolver::search(const Compact& c) {
    const auto current = load(c);
    if (c.moves_left == 0) return current;
    std::uint32_t key = c.covered | c.moves_left << 9;
    for (std::size_t i = 0; i < m_; ++i) key |= (c.h[i] << (12 + 3 * i)) | (c.v[i] << (21 + 3 * i));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::uint32_t best = current;
    for (std::size_t r = 0; r < rects_.size(); ++r) {
        if (cells_[r] & c.covered) continue;
        const auto h = label_value(c, r, RectLabel::horizontal);
        const auto v = h == current ? h : std::min(h, label_value(c, r, RectLabel::vertical));
        best = std::max(best, v);
    }
    memo_.emplace(key, static_cast<std::uint8_t>(best));
    return best;
}

std::uint32_t RectSolver::value(const RectGameState& state) { return search(compact(state)); }

namespace {

Rectangle rectangle_from_masks(std::size_t m, std::uint32_t u, std::uint32_t v) {
    Rectangle r{IdSet(m), IdSet(m)};
    for (std::size_t i = 0; i < m; ++i) {
        if (u >> i & 1u) r.u_set.insert(i);
        if (v >> i & 1u) r.v_set.insert(i);
    }
    return r;
}

}  // namespace

std::optional<Rectangle> RectSolver::best_rectangle(const RectGameState& state) {
    const auto c = compact(state);
    if (c.moves_left == 0) return std::nullopt;
    std::optional<std::size_t> arg;
    std::uint32_t best = 0;
    for (std::size_t r = 0; r < rects_.size(); ++r) {
        if (cells_[r] & c.covered) continue;
        const auto v =
            std::min(label_value(c, r, RectLabel::horizontal), label_value(c, r, RectLabel::vertical));
        if (!arg || v > best) {
            best = v;
            arg = r;
        }
    }
    if (!arg) return std::nullopt;
    return rectangle_from_masks(m_, rects_[*arg].first, rects_[*arg].second);
}

RectLabel RectSolver::best_label(const RectGameState& state, const Rectangle& r) {
    const auto h = value(apply_label(state, r, RectLabel::horizontal));
    const auto v = value(apply_label(state, r, RectLabel::vertical));
    return v < h ? RectLabel::vertical : RectLabel::horizontal;
}

RectGameValue RectSolver::solve(std::uint32_t k) {
    auto state = new_rect_game(m_, m_);
    RectGameValue out;
    out.value = value(state);
    out.labeler_wins = out.value <= k;
    while (auto r = best_rectangle(state)) {
        const auto l = best_label(state, *r);
        out.principal_variation.emplace_back(*r, l);
        state = apply_label(std::move(state), *r, l);
    }
    return out;
}

RectGameValue solve_rectangle(std::size_t m, std::uint32_t a, std::uint32_t b, std::uint32_t k) {
    if (k == 0) throw GameError(ErrorKind::invalid_parameters, "k must be at least 1");
    return RectSolver(m, a, b).solve(k);
}

}  // namespace conductor
