#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conductor/game_model.hpp"
#include "conductor/rectangle_game.hpp"
#include "conductor/strategies.hpp"

namespace conductor {

struct TraceParams {
    std::size_t n = 0;
    std::size_t t = 0;
    ConflictRule rule = ConflictRule::unordered;
    std::uint64_t seed = 0;
    std::string strategy;
    std::string adversary;
    AdversaryShape shape;

    friend bool operator==(const TraceParams& a, const TraceParams& b) {
        return a.n == b.n && a.t == b.t && a.rule == b.rule && a.seed == b.seed && a.strategy == b.strategy &&
               a.adversary == b.adversary && a.shape.max_on == b.shape.max_on && a.shape.max_off == b.shape.max_off;
    }
};

struct StopRecord {
    StopRequest request;
    Decision decision = Decision::off;
    friend bool operator==(const StopRecord&, const StopRecord&) = default;
};

// One conductor-game match. `truncated` is set when the adversary ran out of
// valid requests before the horizon.
struct GameTrace {
    TraceParams params;
    std::vector<StopRecord> stops;
    ConductorState final;
    bool truncated = false;
    friend bool operator==(const GameTrace&, const GameTrace&) = default;
};

struct RectTrace {
    RectGameParams params;
    std::vector<std::pair<Rectangle, RectLabel>> moves;
    RectGameState final;
};

// Replays the recorded stops from a fresh state. Throws on any invalid stop.
ConductorState replay(const GameTrace& trace);
RectGameState replay(const RectTrace& trace);

// (on-set) x (off-set), Horizontal for On and Vertical for Off: the hurt side
// is exactly the side whose line counters increase.
std::pair<Rectangle, RectLabel> stop_to_rectangle(const StopRequest& req, Decision d);

// Image of every conflicting stop, in order; m = n and a = b = ceil(sqrt(t)).
// Throws disjointness-failure if two images overlap, which a trace obeying a
// conflict-once rule cannot produce.
RectTrace trace_to_rect_trace(const GameTrace& trace);

// Inverse direction: a rectangle with disjoint sides read as a request.
StopRequest rectangle_to_request(const Rectangle& r);

struct Mismatch {
    PassengerId passenger = 0;
    std::uint32_t unhappiness = 0;  // as recorded in the trace
    std::uint32_t avoidable = 0;    // incurred on non-conflicting stops
    std::uint32_t hcount = 0;
    std::uint32_t vcount = 0;
};

struct EquivalenceReport {
    std::optional<Mismatch> mismatch;
    std::size_t rectangles = 0;
    // Per passenger: unhappiness collected at stops with an empty side, which
    // the rectangle image does not see.
    std::vector<std::uint32_t> avoidable;

    bool ok() const { return !mismatch; }
    std::uint64_t total_avoidable() const;
};

// Checks unhappiness[p] - avoidable[p] == hcount[p] + vcount[p] for every
// passenger, using trace.final as the recorded unhappiness.
EquivalenceReport verify_equivalence(const GameTrace& trace);

// If the labeler-side bounds hold in the image (hcount <= k*a, vcount <= k*b)
// then every passenger's conflicting-stop unhappiness is <= k*(a+b).
struct BoundTransfer {
    bool premise = false;
    bool conclusion = false;
    std::uint64_t bound = 0;  // k*(a+b)
};
BoundTransfer check_bound_transfer(const GameTrace& trace, std::uint32_t k);

// ceil(sqrt(t)) computed in integers; at least 1.
std::uint32_t ceil_sqrt(std::uint64_t t);

}  // namespace conductor
