#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "conductor/game_model.hpp"
#include "conductor/random.hpp"
#include "conductor/rectangle_game.hpp"

namespace conductor {

// Positive, finite step size of the exponential-weights rules.
class LearningRate {
public:
    explicit LearningRate(double eta);
    double eta() const { return eta_; }

private:
    double eta_;
};

// Caps on request sizes for generated requests (and on exhaustive enumeration).
struct AdversaryShape {
    std::size_t max_on = 1;
    std::size_t max_off = 1;
    std::uint64_t seed = 0;
};

enum class TieBreak { fixed, random };

// ---- conductor rules -------------------------------------------------------

// Satisfies the larger side; ties (including the empty request) go to Off.
Decision decide_majority(const ConductorState& state, const StopRequest& req);

// Sign of  sum_{on} exp(eta*u) - sum_{off} exp(eta*u): +1, 0 or -1.
// Both sums are shifted by the largest exponent involved, so the result is
// unchanged (bit for bit) when every unhappiness value moves by a constant.
int exp_weights_margin(const ConductorState& state, const StopRequest& req, LearningRate lr);

// On iff the weighted on-side is at least the weighted off-side.
Decision decide_exp_weights(const ConductorState& state, const StopRequest& req, LearningRate lr);

// min(1, sqrt(ln n / t_max)), with ln 2 standing in for ln 1 and t_max >= 1.
LearningRate default_learning_rate(std::size_t n, std::size_t t_max);

// Rate schedule of the doubling variant: the rate starts at `initial` and
// halves every time the maximal unhappiness doubles (epoch j covers
// 2^j <= M < 2^(j+1); M = 0 belongs to epoch 0).
LearningRate doubling_learning_rate(const ConductorState& state, LearningRate initial);
Decision decide_exp_weights_doubling(const ConductorState& state, const StopRequest& req,
                                     LearningRate initial = LearningRate(1.0));

// Adversary models the lookahead rule can search against.
enum class AdversaryModel { two_leaders, fixed_pair, exhaustive };
AdversaryModel adversary_model_from_string(std::string_view id);

// Bounded minimax: the decision minimizing the final max unhappiness after
// `depth` further stops (capped at the remaining horizon) of play against the
// modeled adversary. Depth 0 is the one-step greedy rule. Ties go to Off.
// `caps` bounds the request sizes of the exhaustive model.
Decision decide_lookahead(const ConductorState& state, const StopRequest& req, std::size_t depth,
                          AdversaryModel model, const AdversaryShape& caps = {});

// ---- adversaries -----------------------------------------------------------

inline constexpr int kRejectionAttempts = 1000;

// Request with on/off sizes drawn uniformly from [1, cap] and members drawn
// uniformly, resampled until every conflict pair is fresh. std::nullopt
// (exhausted) after kRejectionAttempts failures. The generator is seeded
// from (shape.seed, stops_played), so equal inputs give equal outputs.
std::optional<StopRequest> adversary_random(const ConductorState& state, const AdversaryShape& shape);

// Pairs the two most unhappy passengers whose pair is still fresh: maximizes
// min(u_p, u_q), then max(u_p, u_q), then prefers the lexicographically
// smallest (low id, high id). The lower id is put in the on-set.
std::optional<StopRequest> adversary_two_leaders(const ConductorState& state);

// On={0}, Off={1} every stop, while the ledger allows it.
std::optional<StopRequest> adversary_fixed_pair(const ConductorState& state);

// ---- rectangle-game labelers and adversaries --------------------------------

// Label minimizing  sum_x exp(eta*vcount[x]) + sum_y exp(eta*hcount[y])
// after the move; ties go to Horizontal.
RectLabel label_potential(const RectGameState& state, const Rectangle& r, LearningRate lr);

// Random nonempty sides of size <= caps, resampled until disjoint from every
// placed rectangle. Seeded from (shape.seed, moves placed).
std::optional<Rectangle> rect_adversary_random(const RectGameState& state, const AdversaryShape& shape);

// ---- registry --------------------------------------------------------------

using ConductorPolicy = std::function<Decision(const ConductorState&, const StopRequest&)>;
using AdversaryPolicy = std::function<std::optional<StopRequest>(const ConductorState&)>;
using LabelerPolicy = std::function<RectLabel(const RectGameState&, const Rectangle&)>;
using RectAdversaryPolicy = std::function<std::optional<Rectangle>(const RectGameState&)>;

struct StrategyContext {
    std::uint64_t seed = 0;
    AdversaryShape shape;
    std::optional<double> eta;  // overrides the rule's default rate
    TieBreak tie_break = TieBreak::fixed;
};

// Conductors: "majority", "expw", "expw-doubling", "lookahead:<depth>", "random".
ConductorPolicy make_conductor(std::string_view id, const StrategyContext& ctx);
// Adversaries: "adv-random", "adv-two-leaders", "adv-fixed-pair".
AdversaryPolicy make_adversary(std::string_view id, const StrategyContext& ctx);
// Labelers: "label-potential", "label-random".
LabelerPolicy make_labeler(std::string_view id, const StrategyContext& ctx);
// Rectangle adversaries: "adv-random".
RectAdversaryPolicy make_rect_adversary(std::string_view id, const StrategyContext& ctx);

}  // namespace conductor
