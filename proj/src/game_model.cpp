#include "conductor/game_model.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace conductor {

void ConflictLedger::record(PassengerId on, PassengerId off) {
    if (!rows_[on].contains(off)) {
        rows_[on].insert(off);
        ++entries_;
    }
}

std::vector<PassengerPair> ConflictLedger::unordered_pairs() const {
    std::vector<PassengerPair> out;
    for (std::size_t p = 0; p < rows_.size(); ++p)
        rows_[p].for_each([&](std::size_t q) { out.push_back(make_pair_unordered(p, q)); });
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t ConflictLedger::degree(PassengerId p) const {
    std::size_t d = 0;
    for (std::size_t q = 0; q < rows_.size(); ++q)
        if (q != p && used_unordered(p, q)) ++d;
    return d;
}

ConductorState new_game(std::size_t n, std::size_t t_max, ConflictRule rule) {
    if (n == 0) throw GameError(ErrorKind::invalid_parameters, "passenger count must be at least 1");
    ConductorState s;
    s.n = n;
    s.t_max = t_max;
    s.unhappiness.assign(n, 0);
    s.ledger = ConflictLedger(n);
    s.rule = rule;
    return s;
}

std::vector<PassengerPair> conflict_pairs(const StopRequest& req) {
    std::vector<PassengerPair> out;
    out.reserve(req.on_set.size() * req.off_set.size());
    req.on_set.for_each([&](std::size_t p) {
        req.off_set.for_each([&](std::size_t q) { out.push_back(make_pair_unordered(p, q)); });
    });
    return out;
}

namespace {

std::string pair_text(std::size_t p, std::size_t q) {
    std::ostringstream os;
    os << '{' << p << ',' << q << '}';
    return os.str();
}

}  // namespace

std::optional<Violation> validate_request(const ConductorState& state, const StopRequest& req) {
    // Sets built over a wider universe may carry ids >= n.
    for (const auto* side : {&req.on_set, &req.off_set}) {
        std::optional<std::size_t> bad;
        side->for_each([&](std::size_t id) {
            if (!bad && id >= state.n) bad = id;
        });
        if (bad)
            return Violation{ErrorKind::out_of_range_id,
                             "passenger " + std::to_string(*bad) + " is not below n=" + std::to_string(state.n),
                             std::nullopt, bad};
    }
    if (auto common = req.on_set.first_common(req.off_set); common < req.on_set.universe())
        return Violation{ErrorKind::overlap_violation,
                         "passenger " + std::to_string(common) + " is in both the on-set and the off-set",
                         std::nullopt, common};
    if (state.rule == ConflictRule::off) return std::nullopt;

    std::optional<Violation> found;
    req.on_set.for_each([&](std::size_t p) {
        if (found) return;
        req.off_set.for_each([&](std::size_t q) {
            if (found) return;
            const bool reused = state.rule == ConflictRule::unordered ? state.ledger.used_unordered(p, q)
                                                                      : state.ledger.used_ordered(p, q);
            if (reused)
                found = Violation{ErrorKind::conflict_reuse, "pair " + pair_text(p, q) + " already had a conflict",
                                  make_pair_unordered(p, q), std::nullopt};
        });
    });
    return found;
}

ConductorState apply_stop(ConductorState state, const StopRequest& req, Decision d) {
    if (state.game_over())
        throw GameError(ErrorKind::game_over, "all " + std::to_string(state.t_max) + " stops already played");
    if (auto v = validate_request(state, req)) v->raise();

    hurt_by(req, d).for_each([&](std::size_t p) { ++state.unhappiness[p]; });
    req.on_set.for_each([&](std::size_t p) {
        req.off_set.for_each([&](std::size_t q) { state.ledger.record(p, q); });
    });
    ++state.stops_played;
    return state;
}

std::uint32_t max_unhappiness(const ConductorState& state) {
    if (state.unhappiness.empty()) return 0;
    return *std::max_element(state.unhappiness.begin(), state.unhappiness.end());
}

std::uint64_t sum_unhappiness(const ConductorState& state) {
    std::uint64_t total = 0;
    for (auto u : state.unhappiness) total += u;
    return total;
}

const char* to_string(Decision d) { return d == Decision::on ? "on" : "off"; }

const char* to_string(ConflictRule r) {
    switch (r) {
        case ConflictRule::off: return "off";
        case ConflictRule::unordered: return "unordered";
        case ConflictRule::ordered: return "ordered";
    }
    return "off";
}

Decision decision_from_string(std::string_view s) {
    if (s == "on") return Decision::on;
    if (s == "off") return Decision::off;
    throw GameError(ErrorKind::parse_error, "decision must be \"on\" or \"off\", got \"" + std::string(s) + "\"");
}

ConflictRule conflict_rule_from_string(std::string_view s) {
    if (s == "off") return ConflictRule::off;
    if (s == "unordered") return ConflictRule::unordered;
    if (s == "ordered") return ConflictRule::ordered;
    throw GameError(ErrorKind::parse_error, "unknown conflict rule \"" + std::string(s) + "\"");
}


std::vector<StopRequest> enumerate_requests(const ConductorState& state, std::size_t max_on, std::size_t max_off) {
    const std::size_t n = state.n;
    if (n > 12) throw GameError(ErrorKind::instance_too_large, "request enumeration is limited to n <= 12");
    std::vector<StopRequest> out;
    std::vector<std::uint8_t> digit(n, 0);
    for (;;) {
        std::size_t on_count = 0, off_count = 0;
        for (auto v : digit) {
            on_count += v == 1;
            off_count += v == 2;
        }
        if (on_count <= max_on && off_count <= max_off) {
            StopRequest req(n);
            for (std::size_t p = 0; p < n; ++p) {
                if (digit[p] == 1) req.on_set.insert(p);
                if (digit[p] == 2) req.off_set.insert(p);
            }
            if (!validate_request(state, req)) out.push_back(std::move(req));
        }
        std::size_t i = 0;
        while (i < n && digit[i] == 2) digit[i++] = 0;
        if (i == n) break;
        ++digit[i];
    }
    return out;
}

}  // namespace conductor
