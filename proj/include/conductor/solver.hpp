#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conductor/game_model.hpp"
#include "conductor/rectangle_game.hpp"
#include "conductor/reduction.hpp"

namespace conductor {

inline constexpr std::size_t kMaxSolvePassengers = 5;
inline constexpr std::size_t kMaxSolveStops = 8;
inline constexpr std::size_t kMaxSolveAxis = 3;
inline constexpr std::uint64_t kMaxSolveMoves = 6;

// Packed position of a conductor game: unhappiness (4 bits each), ledger
// adjacency (directed for the ordered rule, undirected otherwise, empty when
// the rule is off) and the stops remaining.
struct SolveKey {
    std::uint64_t bits = 0;
    friend bool operator==(const SolveKey&, const SolveKey&) = default;
};

struct SolveKeyHash {
    std::size_t operator()(const SolveKey& k) const { return std::hash<std::uint64_t>{}(k.bits); }
};

// Raw encoding, or (relabel = true) the least encoding over all passenger
// relabelings that sort passengers by (unhappiness, ledger degree).
SolveKey canonicalize(const ConductorState& state, bool relabel);

struct GameValue {
    std::uint32_t value = 0;
    std::vector<StopRecord> principal_variation;
};

// Full-depth minimax with memoization. Per stop the adversary announces any
// valid request within the caps (each passenger on/off/neither), then the
// conductor decides. The score is the final maximal unhappiness.
class ConductorSolver {
public:
    ConductorSolver(std::size_t n, std::size_t t, ConflictRule rule, std::size_t max_on, std::size_t max_off,
                    bool relabel = false);

    // Optimal final max unhappiness from `state` (which must belong to this game).
    std::uint32_t value(const ConductorState& state);
    // Adversary move attaining value(state); nullopt when the game is over or
    // no request is available.
    std::optional<StopRequest> best_request(const ConductorState& state);
    // Conductor reply minimizing the value; ties go to Off.
    Decision best_decision(const ConductorState& state, const StopRequest& req);

    GameValue solve();
    ConductorState initial() const { return new_game(n_, t_, rule_); }
    std::size_t memo_size() const { return memo_.size(); }

private:
    std::uint32_t after(const ConductorState& state, const StopRequest& req);

    std::size_t n_, t_;
    ConflictRule rule_;
    std::size_t max_on_, max_off_;
    bool relabel_;
    std::unordered_map<SolveKey, std::uint8_t, SolveKeyHash> memo_;
};

GameValue solve_conductor(std::size_t n, std::size_t t, ConflictRule rule, std::size_t max_on, std::size_t max_off,
                          bool relabel = false);

// Final load of a rectangle position: max(ceil(max hcount / a), ceil(max vcount / b)).
// The labeler meets the bounds for slack k exactly when load <= k.
std::uint32_t rect_load(const RectGameState& state, std::uint32_t a, std::uint32_t b);

struct RectGameValue {
    std::uint32_t value = 0;
    bool labeler_wins = false;
    std::vector<std::pair<Rectangle, RectLabel>> principal_variation;
};

// Minimax over all valid rectangles for the placer and both labels for the
// labeler, for T = a*b moves on an m x m board. If no rectangle fits before T
// moves, the game ends and is scored as it stands.
class RectSolver {
public:
    RectSolver(std::size_t m, std::uint32_t a, std::uint32_t b);

    std::uint32_t value(const RectGameState& state);
    std::optional<Rectangle> best_rectangle(const RectGameState& state);
    RectLabel best_label(const RectGameState& state, const Rectangle& r);
    RectGameValue solve(std::uint32_t k);
    std::size_t memo_size() const { return memo_.size(); }

private:
    struct Compact {
        std::uint32_t covered = 0;
        std::uint32_t h[kMaxSolveAxis] = {};
        std::uint32_t v[kMaxSolveAxis] = {};
        std::uint32_t moves_left = 0;
    };
    Compact compact(const RectGameState& state) const;
    std::uint32_t search(const Compact& c);
    std::uint32_t load(const Compact& c) const;
    std::uint32_t label_value(const Compact& c, std::size_t rect_index, RectLabel l);

    std::size_t m_;
    std::uint32_t a_, b_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rects_;  // (u mask, v mask)
    std::vector<std::uint32_t> cells_;                             // covered-cell mask per rect
    std::unordered_map<std::uint32_t, std::uint8_t> memo_;
};

RectGameValue solve_rectangle(std::size_t m, std::uint32_t a, std::uint32_t b, std::uint32_t k);

}  // namespace conductor
