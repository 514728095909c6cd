#include <doctest.h>

#include "conductor/rectangle_game.hpp"
#include "oracles.hpp"

using namespace conductor;

namespace {

Rectangle rect(std::size_t m, std::initializer_list<std::size_t> u, std::initializer_list<std::size_t> v) {
    return Rectangle(IdSet(m, u), IdSet(m, v));
}

}  // namespace

TEST_CASE("validate_rectangle") {
    auto s = new_rect_game(4, 4);
    s = apply_label(std::move(s), rect(4, {0}, {1}), RectLabel::horizontal);
    CHECK_FALSE(validate_rectangle(s, rect(4, {0}, {2})));

    auto t = new_rect_game(4, 4);
    t = apply_label(std::move(t), rect(4, {0, 1}, {2}), RectLabel::horizontal);
    auto v = validate_rectangle(t, rect(4, {1}, {2, 3}));
    REQUIRE(v);
    CHECK(v->kind == ErrorKind::overlap);
    CHECK(v->index == std::size_t{0});
    CHECK(v->pair == std::pair<std::size_t, std::size_t>{1, 2});

    auto empty = validate_rectangle(t, Rectangle(IdSet(4), IdSet(4, {1})));
    REQUIRE(empty);
    CHECK(empty->kind == ErrorKind::empty_side);

    auto range = validate_rectangle(t, rect(8, {5}, {0}));
    REQUIRE(range);
    CHECK(range->kind == ErrorKind::out_of_range_id);
}

TEST_CASE("apply_label updates one family of counters") {
    auto s = new_rect_game(4, 4);
    auto h = apply_label(s, rect(4, {0}, {1}), RectLabel::horizontal);
    CHECK(h.hcount == std::vector<std::uint32_t>{0, 1, 0, 0});
    CHECK(h.vcount == std::vector<std::uint32_t>{0, 0, 0, 0});

    auto v = apply_label(s, rect(4, {0}, {1}), RectLabel::vertical);
    CHECK(v.vcount == std::vector<std::uint32_t>{1, 0, 0, 0});
    CHECK(v.hcount == std::vector<std::uint32_t>{0, 0, 0, 0});

    // two disjoint rectangles sharing row 3
    auto two = apply_label(s, rect(4, {0}, {3}), RectLabel::horizontal);
    two = apply_label(std::move(two), rect(4, {1, 2}, {3}), RectLabel::horizontal);
    CHECK(two.hcount[3] == oracle::recount(two).first[3]);
    CHECK(two.hcount[3] == 2);

    CHECK_THROWS_AS((void)apply_label(two, rect(4, {0}, {3}), RectLabel::vertical), GameError);
}

TEST_CASE("labeler_wins") {
    auto p = make_rect_params(2, 1, 1, 1);
    auto s = apply_label(new_rect_game(p), rect(2, {0}, {1}), RectLabel::horizontal);
    CHECK(labeler_wins(s, p));
    auto s2 = apply_label(new_rect_game(p), rect(2, {0, 1}, {0, 1}), RectLabel::vertical);
    CHECK(labeler_wins(s2, p));

    auto q = make_rect_params(2, 2, 1, 1);
    auto lose = apply_label(new_rect_game(q), rect(2, {0}, {0}), RectLabel::vertical);
    lose = apply_label(std::move(lose), rect(2, {0}, {1}), RectLabel::vertical);
    CHECK(oracle::recount(lose).second[0] == 2);
    CHECK_FALSE(labeler_wins(lose, q));

    try {
        (void)labeler_wins(new_rect_game(q), q);
        FAIL("expected game-not-finished");
    } catch (const GameError& e) {
        CHECK(e.kind() == ErrorKind::game_not_finished);
    }
}

TEST_CASE("line_counts") {
    auto s = new_rect_game(3, 3);
    auto [h0, v0] = line_counts(s);
    CHECK(h0 == std::vector<std::uint32_t>{0, 0, 0});
    CHECK(v0 == std::vector<std::uint32_t>{0, 0, 0});
    s = apply_label(std::move(s), rect(3, {0}, {1, 2}), RectLabel::horizontal);
    CHECK(line_counts(s).first == std::vector<std::uint32_t>{0, 1, 1});
}

TEST_CASE("disjointness criterion: three equivalent forms") {
    const std::size_t m = 3;
    std::vector<Rectangle> all;
    for (std::uint32_t u = 1; u < 8; ++u)
        for (std::uint32_t v = 1; v < 8; ++v) {
            Rectangle r{IdSet(m), IdSet(m)};
            for (std::size_t i = 0; i < m; ++i) {
                if (u >> i & 1u) r.u_set.insert(i);
                if (v >> i & 1u) r.v_set.insert(i);
            }
            all.push_back(r);
        }
    for (const auto& a : all)
        for (const auto& b : all) {
            const bool by_cells = oracle::cells_disjoint({a, b}, m, m);
            const bool by_sides = !a.u_set.intersects(b.u_set) || !a.v_set.intersects(b.v_set);
            auto s = apply_label(new_rect_game(m, m), a, RectLabel::horizontal);
            const bool by_validator = !validate_rectangle(s, b).has_value();
            REQUIRE(by_cells == by_sides);
            REQUIRE(by_cells == by_validator);
        }
}

TEST_CASE("random games: counters match a recount and never decrease") {
    Rng rng(5);
    for (int round = 0; round < 300; ++round) {
        const std::size_t mu = 1 + rng() % 6, mv = 1 + rng() % 6;
        auto s = new_rect_game(mu, mv);
        std::uint64_t horizontal_area = 0;
        for (int attempt = 0; attempt < 40; ++attempt) {
            Rectangle r(oracle::random_subset(rng, mu, 0.4), oracle::random_subset(rng, mv, 0.4));
            if (validate_rectangle(s, r)) continue;
            const auto l = (rng() & 1) ? RectLabel::horizontal : RectLabel::vertical;
            auto next = apply_label(s, r, l);
            for (std::size_t y = 0; y < mv; ++y) REQUIRE(next.hcount[y] >= s.hcount[y]);
            for (std::size_t x = 0; x < mu; ++x) REQUIRE(next.vcount[x] >= s.vcount[x]);
            if (l == RectLabel::horizontal) horizontal_area += r.v_set.size();
            s = std::move(next);
        }
        const auto [h, v] = oracle::recount(s);
        CHECK(h == s.hcount);
        CHECK(v == s.vcount);
        std::uint64_t hsum = 0;
        for (auto x : s.hcount) hsum += x;
        CHECK(hsum == horizontal_area);
        std::vector<Rectangle> rects;
        for (const auto& [r, l] : s.placed) rects.push_back(r);
        CHECK(oracle::cells_disjoint(rects, mu, mv));
    }
}

TEST_CASE("params") {
    auto p = make_rect_params(8, 3, 2, 1);
    CHECK(p.moves() == 6);
    CHECK(p.bits() == 3);
    CHECK(make_rect_params(5, 1, 1, 1).bits() == 3);
    CHECK(make_rect_params(1, 1, 1, 1).bits() == 0);
    CHECK_THROWS_AS(make_rect_params(4, 0, 1, 1), GameError);
}
