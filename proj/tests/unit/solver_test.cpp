#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "conductor/solver.hpp"
#include "conductor/strategies.hpp"
#include "oracles.hpp"

using namespace conductor;

TEST_CASE("conductor values for tiny instances") {
    CHECK(solve_conductor(2, 0, ConflictRule::unordered, 1, 1).value == 0);
    for (std::size_t t = 1; t <= 6; ++t) {
        CHECK(solve_conductor(2, t, ConflictRule::unordered, 1, 1).value == 1);
        CHECK(solve_conductor(2, t, ConflictRule::off, 1, 1).value == (t + 1) / 2);
    }
    for (std::size_t t = 1; t <= 5; ++t) CHECK(solve_conductor(3, t, ConflictRule::unordered, 1, 1).value == 1);
    const std::uint32_t off3[] = {1, 1, 2, 2, 3};
    for (std::size_t t = 1; t <= 5; ++t) CHECK(solve_conductor(3, t, ConflictRule::off, 1, 1).value == off3[t - 1]);
}

TEST_CASE("memoized solver agrees with plain recursion") {
    for (auto rule : {ConflictRule::off, ConflictRule::unordered, ConflictRule::ordered})
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t t = 0; t <= 4; ++t)
                for (std::size_t caps = 1; caps <= 2; ++caps) {
                    CAPTURE(n);
                    CAPTURE(t);
                    CAPTURE(caps);
                    const auto expected = oracle::brute_conductor(n, t, rule, caps, caps);
                    CHECK(solve_conductor(n, t, rule, caps, caps).value == expected);
                    CHECK(solve_conductor(n, t, rule, caps, caps, true).value == expected);
                }
}

TEST_CASE("relabeling canonicalizes permuted states") {
    Rng rng(4);
    auto s = new_game(5, 8, ConflictRule::unordered);
    s = apply_stop(std::move(s), StopRequest(5, {0}, {1}), Decision::on);
    s = apply_stop(std::move(s), StopRequest(5, {2}, {3, 4}), Decision::off);
    s = apply_stop(std::move(s), StopRequest(5, {0}, {4}), Decision::off);

    std::vector<std::size_t> perm(5);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    const auto reference = canonicalize(s, true);
    std::size_t distinct_raw = 0;
    do {
        // Relabel passenger p as perm[p].
        auto relabeled = new_game(5, 8, ConflictRule::unordered);
        relabeled.stops_played = s.stops_played;
        for (std::size_t p = 0; p < 5; ++p) {
            relabeled.unhappiness[perm[p]] = s.unhappiness[p];
            for (std::size_t q = 0; q < 5; ++q)
                if (s.ledger.used_ordered(p, q)) relabeled.ledger.record(perm[p], perm[q]);
        }
        CHECK(canonicalize(relabeled, true) == reference);
        distinct_raw += !(canonicalize(relabeled, false) == canonicalize(s, false));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(distinct_raw > 0);
}

TEST_CASE("game value is monotone in the horizon and conflict-once never helps the adversary") {
    for (std::size_t n = 2; n <= 3; ++n) {
        std::uint32_t prev_once = 0, prev_off = 0;
        for (std::size_t t = 0; t <= 5; ++t) {
            const auto once = solve_conductor(n, t, ConflictRule::unordered, 1, 1).value;
            const auto off = solve_conductor(n, t, ConflictRule::off, 1, 1).value;
            CHECK(once >= prev_once);
            CHECK(off >= prev_off);
            CHECK(once <= off);
            prev_once = once;
            prev_off = off;
        }
    }
}

TEST_CASE("principal variation realizes the value") {
    for (std::size_t t = 1; t <= 6; ++t) {
        const auto v = solve_conductor(2, t, ConflictRule::off, 1, 1);
        CHECK(v.value == (t + 1) / 2);
        auto s = new_game(2, t, ConflictRule::off);
        for (const auto& stop : v.principal_variation) s = apply_stop(std::move(s), stop.request, stop.decision);
        CHECK(s.game_over());
        CHECK(max_unhappiness(s) == v.value);
    }
}

TEST_CASE("full-depth lookahead attains the game value against the optimal adversary") {
    for (auto rule : {ConflictRule::off, ConflictRule::unordered})
        for (std::size_t t = 1; t <= 4; ++t) {
            ConductorSolver solver(3, t, rule, 1, 1);
            auto s = solver.initial();
            const auto value = solver.value(s);
            while (auto req = solver.best_request(s))
                s = apply_stop(std::move(s), *req,
                               decide_lookahead(s, *req, t, AdversaryModel::exhaustive, {1, 1, 0}));
            CHECK(max_unhappiness(s) == value);
        }
}

TEST_CASE("size limits") {
    for (auto [n, t] : {std::pair<std::size_t, std::size_t>{6, 2}, {3, 9}}) {
        try {
            (void)solve_conductor(n, t, ConflictRule::unordered, 1, 1);
            FAIL("expected instance-too-large");
        } catch (const GameError& e) {
            CHECK(e.kind() == ErrorKind::instance_too_large);
        }
    }
    CHECK_THROWS_AS(solve_rectangle(4, 1, 1, 1), GameError);
    CHECK_THROWS_AS(solve_rectangle(2, 3, 3, 1), GameError);
    CHECK_THROWS_AS(solve_rectangle(2, 1, 1, 0), GameError);
}

TEST_CASE("rectangle values") {
    const auto v = solve_rectangle(2, 2, 2, 1);
    CHECK(v.value == 1);
    CHECK(v.labeler_wins);
    CHECK(solve_rectangle(2, 1, 4, 1).value == 1);
    CHECK(solve_rectangle(3, 1, 2, 1).value == 1);

    // a single cell: one move, the board is then full
    const auto single = solve_rectangle(1, 2, 2, 1);
    CHECK(single.value == 1);
    CHECK(single.principal_variation.size() == 1);
}

TEST_CASE("rectangle solver agrees with plain recursion") {
    for (std::size_t m = 1; m <= 2; ++m)
        for (std::uint32_t a = 1; a <= 2; ++a)
            for (std::uint32_t b = 1; b <= 2; ++b) {
                CAPTURE(m);
                CAPTURE(a);
                CAPTURE(b);
                CHECK(solve_rectangle(m, a, b, 1).value == oracle::brute_rectangle(m, a, b));
            }
}

TEST_CASE("rectangle principal variation is a legal play reaching the value") {
    const auto v = solve_rectangle(2, 2, 2, 1);
    auto s = new_rect_game(2, 2);
    std::vector<Rectangle> rects;
    for (const auto& [r, l] : v.principal_variation) {
        REQUIRE_FALSE(validate_rectangle(s, r));
        s = apply_label(std::move(s), r, l);
        rects.push_back(r);
    }
    CHECK(oracle::cells_disjoint(rects, 2, 2));
    CHECK(rect_load(s, 2, 2) == v.value);
}
