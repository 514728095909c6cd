#include "conductor/rectangle_game.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace conductor {

std::size_t RectGameParams::bits() const {
    const auto m = std::max(m_u, m_v);
    return m <= 1 ? 0 : static_cast<std::size_t>(std::bit_width(m - 1));
}

RectGameParams make_rect_params(std::size_t m, std::uint32_t a, std::uint32_t b, std::uint32_t k) {
    if (m == 0 || a == 0 || b == 0 || k == 0)
        throw GameError(ErrorKind::invalid_parameters, "m, a, b and k must all be at least 1");
    return RectGameParams{m, m, a, b, k};
}

RectGameState new_rect_game(std::size_t m_u, std::size_t m_v) {
    if (m_u == 0 || m_v == 0) throw GameError(ErrorKind::invalid_parameters, "axis sizes must be at least 1");
    RectGameState s;
    s.m_u = m_u;
    s.m_v = m_v;
    s.hcount.assign(m_v, 0);
    s.vcount.assign(m_u, 0);
    return s;
}

namespace {

std::optional<std::size_t> first_out_of_range(const IdSet& side, std::size_t m) {
    std::optional<std::size_t> bad;
    side.for_each([&](std::size_t id) {
        if (!bad && id >= m) bad = id;
    });
    return bad;
}

}  // namespace

std::optional<Violation> validate_rectangle(const RectGameState& state, const Rectangle& r) {
    if (r.u_set.empty() || r.v_set.empty())
        return Violation{ErrorKind::empty_side, "rectangle sides must be nonempty", std::nullopt, std::nullopt};
    if (auto bad = first_out_of_range(r.u_set, state.m_u))
        return Violation{ErrorKind::out_of_range_id, "first-axis point " + std::to_string(*bad) + " out of range",
                         std::nullopt, bad};
    if (auto bad = first_out_of_range(r.v_set, state.m_v))
        return Violation{ErrorKind::out_of_range_id, "second-axis point " + std::to_string(*bad) + " out of range",
                         std::nullopt, bad};
    for (std::size_t i = 0; i < state.placed.size(); ++i) {
        const auto& other = state.placed[i].first;
        if (rectangles_intersect(r, other)) {
            const auto x = r.u_set.first_common(other.u_set);
            const auto y = r.v_set.first_common(other.v_set);
            return Violation{ErrorKind::overlap,
                             "overlaps placed rectangle " + std::to_string(i) + " at point (" + std::to_string(x) +
                                 "," + std::to_string(y) + ")",
                             std::pair{x, y}, i};
        }
    }
    return std::nullopt;
}

RectGameState apply_label(RectGameState state, const Rectangle& r, RectLabel l) {
    if (auto v = validate_rectangle(state, r)) v->raise();
    if (l == RectLabel::horizontal)
        r.v_set.for_each([&](std::size_t y) { ++state.hcount[y]; });
    else
        r.u_set.for_each([&](std::size_t x) { ++state.vcount[x]; });
    state.placed.emplace_back(r, l);
    return state;
}

std::uint32_t max_hcount(const RectGameState& state) {
    return state.hcount.empty() ? 0 : *std::max_element(state.hcount.begin(), state.hcount.end());
}

std::uint32_t max_vcount(const RectGameState& state) {
    return state.vcount.empty() ? 0 : *std::max_element(state.vcount.begin(), state.vcount.end());
}

bool within_bounds(const RectGameState& state, const RectGameParams& p) {
    return max_hcount(state) <= std::uint64_t{p.k} * p.a && max_vcount(state) <= std::uint64_t{p.k} * p.b;
}

bool labeler_wins(const RectGameState& state, const RectGameParams& p) {
    if (state.placed.size() != p.moves())
        throw GameError(ErrorKind::game_not_finished, std::to_string(state.placed.size()) + " of " +
                                                          std::to_string(p.moves()) + " moves played");
    return within_bounds(state, p);
}

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> line_counts(const RectGameState& state) {
    return {state.hcount, state.vcount};
}

const char* to_string(RectLabel l) { return l == RectLabel::horizontal ? "h" : "v"; }

RectLabel rect_label_from_string(std::string_view s) {
    if (s == "h") return RectLabel::horizontal;
    if (s == "v") return RectLabel::vertical;
    throw GameError(ErrorKind::parse_error, "label must be \"h\" or \"v\", got \"" + std::string(s) + "\"");
}

}  // namespace conductor
