#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "conductor/errors.hpp"
#include "conductor/id_set.hpp"

namespace conductor {

using PassengerId = std::size_t;
using PassengerSet = IdSet;

enum class Decision { on, off };

// How the conflict ledger constrains requests.
//  off       - no constraint (permanent-conflict experiments)
//  unordered - each unordered pair {p,q} may be in conflict at most once
//  ordered   - each ordered pair (p on, q off) may occur at most once
enum class ConflictRule { off, unordered, ordered };

struct StopRequest {
    PassengerSet on_set;
    PassengerSet off_set;

    StopRequest() = default;
    explicit StopRequest(std::size_t n) : on_set(n), off_set(n) {}
    StopRequest(PassengerSet on, PassengerSet off) : on_set(std::move(on)), off_set(std::move(off)) {}
    StopRequest(std::size_t n, std::initializer_list<std::size_t> on, std::initializer_list<std::size_t> off)
        : on_set(n, on), off_set(n, off) {}

    bool conflicting() const { return !on_set.empty() && !off_set.empty(); }
    friend bool operator==(const StopRequest&, const StopRequest&) = default;
};

// Unordered pair, stored with first < second.
using PassengerPair = std::pair<PassengerId, PassengerId>;

inline PassengerPair make_pair_unordered(PassengerId p, PassengerId q) {
    return p < q ? PassengerPair{p, q} : PassengerPair{q, p};
}

// Used conflicts as a directed adjacency matrix: row p holds every q such
// that some stop had p in the on-set and q in the off-set.
class ConflictLedger {
public:
    ConflictLedger() = default;
    explicit ConflictLedger(std::size_t n) : rows_(n, IdSet(n)) {}

    std::size_t passengers() const { return rows_.size(); }

    bool used_ordered(PassengerId on, PassengerId off) const { return rows_[on].contains(off); }
    bool used_unordered(PassengerId p, PassengerId q) const {
        return rows_[p].contains(q) || rows_[q].contains(p);
    }
    void record(PassengerId on, PassengerId off);

    // Number of recorded (on, off) entries; equals the number of distinct
    // unordered pairs when the unordered rule is enforced.
    std::size_t entries() const { return entries_; }
    // Distinct unordered pairs touched.
    std::vector<PassengerPair> unordered_pairs() const;
    // Number of distinct partners p has conflicted with (either role).
    std::size_t degree(PassengerId p) const;

    const IdSet& row(PassengerId on) const { return rows_[on]; }

    friend bool operator==(const ConflictLedger&, const ConflictLedger&) = default;

private:
    std::vector<IdSet> rows_;
    std::size_t entries_ = 0;
};

struct ConductorState {
    std::size_t n = 0;
    std::size_t t_max = 0;
    std::size_t stops_played = 0;
    std::vector<std::uint32_t> unhappiness;
    ConflictLedger ledger;
    ConflictRule rule = ConflictRule::unordered;

    bool game_over() const { return stops_played >= t_max; }
    friend bool operator==(const ConductorState&, const ConductorState&) = default;
};

ConductorState new_game(std::size_t n, std::size_t t_max, ConflictRule rule);
inline ConductorState new_game(std::size_t n, std::size_t t_max, bool enforce_conflict_once) {
    return new_game(n, t_max, enforce_conflict_once ? ConflictRule::unordered : ConflictRule::off);
}

// Every {p, q} with p in the on-set and q in the off-set, as unordered pairs
// listed in (on, off) iteration order.
std::vector<PassengerPair> conflict_pairs(const StopRequest& req);

std::optional<Violation> validate_request(const ConductorState& state, const StopRequest& req);

// Throws GameError on a game-over state or an invalid request.
[[nodiscard]] ConductorState apply_stop(ConductorState state, const StopRequest& req, Decision d);

std::uint32_t max_unhappiness(const ConductorState& state);
std::uint64_t sum_unhappiness(const ConductorState& state);

// The passengers a decision leaves unsatisfied.
inline const PassengerSet& hurt_by(const StopRequest& req, Decision d) {
    return d == Decision::on ? req.off_set : req.on_set;
}

const char* to_string(Decision d);
const char* to_string(ConflictRule r);
Decision decision_from_string(std::string_view s);
ConflictRule conflict_rule_from_string(std::string_view s);

// Every request valid in `state` with |on| <= max_on and |off| <= max_off,
// built by assigning each passenger on/off/neither (3^n candidates). The
// empty request is included. Order is deterministic (base-3 counting with
// passenger 0 as the least significant digit). Intended for n <= 12.
std::vector<StopRequest> enumerate_requests(const ConductorState& state, std::size_t max_on, std::size_t max_off);

}  // namespace conductor
