#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conductor/game_model.hpp"
#include "conductor/reduction.hpp"
#include "conductor/strategies.hpp"

namespace conductor {

enum class GameKind { conductor, rectangle };

const char* to_string(GameKind kind);
GameKind game_kind_from_string(std::string_view s);

struct MatchConfig {
    GameKind kind = GameKind::conductor;
    std::size_t n = 16;  // passengers, or axis size m for the rectangle game
    std::vector<std::size_t> horizons{16};
    std::string strategy = "expw";      // conductor strategy or labeler id
    std::string adversary = "adv-random";
    std::size_t repetitions = 1;
    std::uint64_t base_seed = 0;
    ConflictRule rule = ConflictRule::unordered;
    AdversaryShape shape;  // caps only; the seed is derived per match
    std::optional<double> eta;
    TieBreak tie_break = TieBreak::fixed;
    std::uint32_t k = 1;  // rectangle game slack

    // Throws invalid-parameters.
    void validate() const;
};

// Conductor match: adversary and strategy alternate for t stops or until the
// adversary is exhausted.
GameTrace run_match(const MatchConfig& cfg, std::size_t t, std::uint64_t seed);

struct RectMatch {
    RectTrace trace;
    bool truncated = false;
    bool labeler_wins = false;  // bounds check on the position reached
};

// Rectangle match on an m x m board with a = b = ceil(sqrt(t)), T = a*b.
RectMatch run_rect_match(const MatchConfig& cfg, std::size_t t, std::uint64_t seed);

// For the rectangle game, max_unhappiness holds the largest line counter
// (max over hcount and vcount) and sum_unhappiness the sum of all counters.
struct SweepRow {
    std::size_t t = 0;
    std::uint64_t seed = 0;
    std::string strategy;
    std::string adversary;
    std::uint64_t max_unhappiness = 0;
    std::uint64_t sum_unhappiness = 0;
    bool truncated = false;
    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Cross product horizons x repetitions in that order, seed = mix_seed(base, t, rep).
// Matches run on up to `threads` workers (0 = hardware concurrency); row
// order does not depend on scheduling.
std::vector<SweepRow> run_sweep(const MatchConfig& cfg, unsigned threads = 0);

struct FitResult {
    double alpha = 0.0;
    double c = 0.0;
    double residual = 0.0;  // RMS of log-space residuals
    std::size_t points_used = 0;
    std::size_t dropped_zero = 0;
};

// Least squares on log M = alpha * log t + log c. Points with M = 0 (or
// below 1) are dropped and counted. Throws insufficient-points when fewer
// than two distinct t remain.
FitResult fit_exponent(std::span<const std::pair<double, double>> points);

enum class SweepAggregate { rows, mean };
// Fit over sweep rows: every row as a point, or the per-t mean of max_unhappiness.
FitResult fit_sweep(std::span<const SweepRow> rows, SweepAggregate how = SweepAggregate::mean);

// ---- persistence ---------------------------------------------------------------

inline constexpr std::string_view kSweepHeader = "t,seed,strategy,adversary,max_unhappiness,sum_unhappiness,truncated";

void write_trace(std::ostream& os, const GameTrace& trace);
// Replays the stops (throwing on an invalid one). The returned final state is
// the replay, except that `unhappiness` keeps the recorded values so that a
// doctored trace is caught by verify_equivalence rather than silently fixed.
GameTrace read_trace(std::istream& is);

void write_rect_trace(std::ostream& os, const RectTrace& trace);
RectTrace read_rect_trace(std::istream& is);

void write_sweep(std::ostream& os, std::span<const SweepRow> rows);
std::vector<SweepRow> read_sweep(std::istream& is);

void write_fit(std::ostream& os, const FitResult& fit);

enum class ExportFormat { trace, table };
ExportFormat export_format_from_string(std::string_view s);

// File export. Traces accept the trace format; sweeps and fits the table
// format. Throws unknown-format for other pairings and io-failure when the
// file cannot be written.
void export_to_file(const GameTrace& trace, ExportFormat format, const std::string& path);
void export_to_file(const RectTrace& trace, ExportFormat format, const std::string& path);
void export_to_file(std::span<const SweepRow> rows, ExportFormat format, const std::string& path);
void export_to_file(const FitResult& fit, ExportFormat format, const std::string& path);

GameTrace import_trace(const std::string& path);
std::vector<SweepRow> import_sweep(const std::string& path);

}  // namespace conductor
