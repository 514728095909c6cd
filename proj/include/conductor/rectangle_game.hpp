#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "conductor/errors.hpp"
#include "conductor/id_set.hpp"

namespace conductor {

using PointId = std::size_t;

// Combinatorial rectangle U x V. u_set lives on the first axis, v_set on the second.
struct Rectangle {
    IdSet u_set;
    IdSet v_set;

    Rectangle() = default;
    Rectangle(IdSet u, IdSet v) : u_set(std::move(u)), v_set(std::move(v)) {}

    bool contains(PointId x, PointId y) const { return u_set.contains(x) && v_set.contains(y); }
    friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

// Two rectangles share a point iff both their sides intersect.
inline bool rectangles_intersect(const Rectangle& a, const Rectangle& b) {
    return a.u_set.intersects(b.u_set) && a.v_set.intersects(b.v_set);
}

enum class RectLabel { horizontal, vertical };

struct RectGameParams {
    std::size_t m_u = 1;  // first-axis universe size
    std::size_t m_v = 1;  // second-axis universe size
    std::uint32_t a = 1;
    std::uint32_t b = 1;
    std::uint32_t k = 1;

    std::uint64_t moves() const { return std::uint64_t{a} * b; }
    // Bits needed to address the larger axis; log2(m) when m is a power of two.
    std::size_t bits() const;
};

RectGameParams make_rect_params(std::size_t m, std::uint32_t a, std::uint32_t b, std::uint32_t k);

struct RectGameState {
    std::size_t m_u = 0;
    std::size_t m_v = 0;
    std::vector<std::pair<Rectangle, RectLabel>> placed;
    std::vector<std::uint32_t> hcount;  // indexed by second-axis point y
    std::vector<std::uint32_t> vcount;  // indexed by first-axis point x

    friend bool operator==(const RectGameState&, const RectGameState&) = default;
};

RectGameState new_rect_game(std::size_t m_u, std::size_t m_v);
inline RectGameState new_rect_game(const RectGameParams& p) { return new_rect_game(p.m_u, p.m_v); }

std::optional<Violation> validate_rectangle(const RectGameState& state, const Rectangle& r);

[[nodiscard]] RectGameState apply_label(RectGameState state, const Rectangle& r, RectLabel l);

// Throws game-not-finished unless exactly a*b rectangles were placed.
bool labeler_wins(const RectGameState& state, const RectGameParams& p);
// The winning condition itself, without the move-count precondition.
bool within_bounds(const RectGameState& state, const RectGameParams& p);

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> line_counts(const RectGameState& state);

std::uint32_t max_hcount(const RectGameState& state);
std::uint32_t max_vcount(const RectGameState& state);

const char* to_string(RectLabel l);  // "h" / "v"
RectLabel rect_label_from_string(std::string_view s);

}  // namespace conductor
