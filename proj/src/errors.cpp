#include "conductor/errors.hpp"

namespace conductor {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_parameters: return "invalid-parameters";
        case ErrorKind::overlap_violation: return "overlap-violation";
        case ErrorKind::out_of_range_id: return "out-of-range-id";
        case ErrorKind::conflict_reuse: return "conflict-reuse";
        case ErrorKind::game_over: return "game-over";
        case ErrorKind::empty_side: return "empty-side";
        case ErrorKind::overlap: return "overlap";
        case ErrorKind::game_not_finished: return "game-not-finished";
        case ErrorKind::non_conflicting_stop: return "non-conflicting-stop";
        case ErrorKind::disjointness_failure: return "disjointness-failure";
        case ErrorKind::instance_too_large: return "instance-too-large";
        case ErrorKind::unknown_id: return "unknown-id";
        case ErrorKind::insufficient_points: return "insufficient-points";
        case ErrorKind::io_failure: return "io-failure";
        case ErrorKind::unknown_format: return "unknown-format";
        case ErrorKind::parse_error: return "parse-error";
    }
    return "unknown";
}

}  // namespace conductor
