#include <doctest.h>

#include "conductor/harness.hpp"
#include "conductor/reduction.hpp"
#include "oracles.hpp"

using namespace conductor;

namespace {

GameTrace make_trace(std::size_t n, std::size_t t, ConflictRule rule, std::vector<StopRecord> stops) {
    GameTrace trace;
    trace.params = TraceParams{n, t, rule, 0, "manual", "manual", {}};
    trace.stops = std::move(stops);
    trace.final = replay(trace);
    return trace;
}

// Per passenger, count conflicting stops that hurt them, split by side.
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> count_conflict_hurts(const GameTrace& trace) {
    const auto n = trace.params.n;
    std::vector<std::uint32_t> as_off(n, 0), as_on(n, 0);
    for (const auto& s : trace.stops) {
        if (s.request.on_set.empty() || s.request.off_set.empty()) continue;
        for (std::size_t p = 0; p < n; ++p) {
            if (s.decision == Decision::on && s.request.off_set.contains(p)) ++as_off[p];
            if (s.decision == Decision::off && s.request.on_set.contains(p)) ++as_on[p];
        }
    }
    return {as_off, as_on};
}

}  // namespace

TEST_CASE("ceil_sqrt") {
    CHECK(ceil_sqrt(0) == 1);
    CHECK(ceil_sqrt(1) == 1);
    CHECK(ceil_sqrt(2) == 2);
    CHECK(ceil_sqrt(4) == 2);
    CHECK(ceil_sqrt(5) == 3);
    CHECK(ceil_sqrt(100) == 10);
    CHECK(ceil_sqrt(101) == 11);
}

TEST_CASE("stop_to_rectangle") {
    auto [r, l] = stop_to_rectangle(StopRequest(6, {1, 2}, {5}), Decision::on);
    CHECK(r.u_set == IdSet(6, {1, 2}));
    CHECK(r.v_set == IdSet(6, {5}));
    CHECK(l == RectLabel::horizontal);
    CHECK(stop_to_rectangle(StopRequest(6, {1}, {5}), Decision::off).second == RectLabel::vertical);
    try {
        (void)stop_to_rectangle(StopRequest(6, {1}, {}), Decision::on);
        FAIL("expected non-conflicting-stop");
    } catch (const GameError& e) {
        CHECK(e.kind() == ErrorKind::non_conflicting_stop);
    }
    CHECK(rectangle_to_request(r) == StopRequest(6, {1, 2}, {5}));
}

TEST_CASE("two-stop trace") {
    auto trace = make_trace(4, 4, ConflictRule::unordered,
                            {{StopRequest(4, {0}, {1}), Decision::on}, {StopRequest(4, {2, 3}, {1}), Decision::off}});
    CHECK(trace.final.unhappiness == std::vector<std::uint32_t>{0, 1, 1, 1});
    const auto image = trace_to_rect_trace(trace);
    REQUIRE(image.moves.size() == 2);
    CHECK(image.params.a == 2);
    CHECK(image.params.m_u == 4);
    CHECK(image.final.hcount == std::vector<std::uint32_t>{0, 1, 0, 0});
    CHECK(image.final.vcount == std::vector<std::uint32_t>{0, 0, 1, 1});
    const auto report = verify_equivalence(trace);
    CHECK(report.ok());
    CHECK(report.rectangles == 2);
    CHECK(report.total_avoidable() == 0);
}

TEST_CASE("non-conflicting stops are skipped and counted as avoidable") {
    auto trace = make_trace(3, 3, ConflictRule::unordered,
                            {{StopRequest(3, {0}, {}), Decision::off},
                             {StopRequest(3, {0}, {1}), Decision::off},
                             {StopRequest(3, {}, {2}), Decision::on}});
    const auto report = verify_equivalence(trace);
    CHECK(report.ok());
    CHECK(report.rectangles == 1);
    CHECK(report.avoidable == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(trace.final.unhappiness == std::vector<std::uint32_t>{2, 0, 1});
}

TEST_CASE("empty trace and single stop") {
    auto empty = make_trace(5, 0, ConflictRule::unordered, {});
    CHECK(verify_equivalence(empty).ok());
    CHECK(verify_equivalence(empty).rectangles == 0);

    auto one = make_trace(5, 1, ConflictRule::unordered, {{StopRequest(5, {0, 1, 2}, {3, 4}), Decision::on}});
    const auto report = verify_equivalence(one);
    CHECK(report.ok());
    CHECK(report.rectangles == 1);
}

TEST_CASE("tampered trace reports a mismatch") {
    auto trace = make_trace(3, 2, ConflictRule::unordered, {{StopRequest(3, {0}, {1}), Decision::on}});
    trace.final.unhappiness[2] = 1;
    const auto report = verify_equivalence(trace);
    REQUIRE_FALSE(report.ok());
    CHECK(report.mismatch->passenger == 2);
    CHECK(report.mismatch->unhappiness == 1);
    CHECK(report.mismatch->hcount == 0);
    CHECK(report.mismatch->vcount == 0);
}

TEST_CASE("repeated pairs without a conflict-once rule break disjointness") {
    auto trace = make_trace(2, 2, ConflictRule::off,
                            {{StopRequest(2, {0}, {1}), Decision::on}, {StopRequest(2, {0}, {1}), Decision::on}});
    try {
        (void)trace_to_rect_trace(trace);
        FAIL("expected disjointness-failure");
    } catch (const GameError& e) {
        CHECK(e.kind() == ErrorKind::disjointness_failure);
    }
}

TEST_CASE("random conflict-once traces map to disjoint rectangles with matching counters") {
    Rng rng(5);
    const char* strategies[] = {"majority", "expw", "expw-doubling", "random"};
    const char* adversaries[] = {"adv-random", "adv-two-leaders"};
    for (int i = 0; i < 500; ++i) {
        MatchConfig cfg;
        cfg.n = 32;
        cfg.strategy = strategies[i % 4];
        cfg.adversary = adversaries[(i / 4) % 2];
        cfg.rule = (i % 3 == 0) ? ConflictRule::ordered : ConflictRule::unordered;
        cfg.shape = {1 + rng() % 4, 1 + rng() % 4, 0};
        const auto trace = run_match(cfg, 100, rng());

        const auto image = trace_to_rect_trace(trace);
        std::vector<Rectangle> rects;
        for (const auto& [r, l] : image.moves) rects.push_back(r);
        REQUIRE(oracle::cells_disjoint(rects, 32, 32));

        const auto [as_off, as_on] = count_conflict_hurts(trace);
        const auto [h, v] = oracle::recount(image.final);
        REQUIRE(h == as_off);
        REQUIRE(v == as_on);
        REQUIRE(verify_equivalence(trace).ok());
    }
}

TEST_CASE("rectangles pull back to valid requests") {
    // Place disjoint random rectangles on an n x n board with disjoint sides and
    // replay them as stops under the ordered rule.
    Rng rng(17);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 4 + rng() % 8;
        auto board = new_rect_game(n, n);
        auto state = new_game(n, 1000, ConflictRule::ordered);
        for (int tries = 0; tries < 40; ++tries) {
            Rectangle r(oracle::random_subset(rng, n, 0.3), oracle::random_subset(rng, n, 0.3));
            if (r.u_set.empty() || r.v_set.empty() || r.u_set.intersects(r.v_set)) continue;
            if (validate_rectangle(board, r)) continue;
            const auto l = (rng() & 1) ? RectLabel::horizontal : RectLabel::vertical;
            board = apply_label(std::move(board), r, l);
            const auto req = rectangle_to_request(r);
            REQUIRE_FALSE(validate_request(state, req));
            state = apply_stop(std::move(state), req, l == RectLabel::horizontal ? Decision::on : Decision::off);
        }
        for (std::size_t p = 0; p < n; ++p) CHECK(state.unhappiness[p] == board.hcount[p] + board.vcount[p]);
    }
}

TEST_CASE("bound transfer") {
    auto trace = make_trace(3, 4, ConflictRule::unordered,
                            {{StopRequest(3, {0}, {1}), Decision::on}, {StopRequest(3, {0}, {2}), Decision::on}});
    const auto bt = check_bound_transfer(trace, 1);
    CHECK(bt.bound == 4);
    CHECK(bt.premise);
    CHECK(bt.conclusion);

    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        MatchConfig cfg;
        cfg.n = 10;
        cfg.strategy = (i & 1) ? "expw" : "random";
        cfg.shape = {3, 3, 0};
        const auto tr = run_match(cfg, 30, rng());
        for (std::uint32_t k = 1; k <= 3; ++k) {
            const auto r = check_bound_transfer(tr, k);
            if (r.premise) CHECK(r.conclusion);
        }
    }
}
