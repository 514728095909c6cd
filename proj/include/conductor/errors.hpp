#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace conductor {

enum class ErrorKind {
    invalid_parameters,
    overlap_violation,
    out_of_range_id,
    conflict_reuse,
    game_over,
    empty_side,
    overlap,
    game_not_finished,
    non_conflicting_stop,
    disjointness_failure,
    instance_too_large,
    unknown_id,
    insufficient_points,
    io_failure,
    unknown_format,
    parse_error,
};

std::string_view to_string(ErrorKind kind);

class GameError : public std::runtime_error {
public:
    GameError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Result of a validation check that failed. Carries the offending pair
// (conflict reuse, overlap point) or placed-rectangle index when relevant.
struct Violation {
    ErrorKind kind;
    std::string message;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    std::optional<std::size_t> index;

    [[noreturn]] void raise() const { throw GameError(kind, message); }
};

}  // namespace conductor
