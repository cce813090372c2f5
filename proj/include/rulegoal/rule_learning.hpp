#pragma once

#include <optional>
#include <vector>

#include "rulegoal/core/evaluator.hpp"
#include "rulegoal/core/rule.hpp"

namespace rulegoal {

struct RuleLearningParams {
  /// Base enumeration depth d: premises up to this size are enumerated exhaustively.
  std::size_t base_depth = 3;
  /// Laws whose Wilson lower bound falls below this value are not reported.
  double probability_threshold = 0.1;
  /// One-sided confidence level of that lower bound (≤ 0.5 uses the point estimate).
  double confidence_threshold = 0.9;
  /// A refinement is refined further only if it gained at least this much probability.
  double probability_gain_threshold = 0.1;
  /// Cap on sensor predicates in a premise; goal predicates are bounded by base_depth only.
  std::size_t max_sensor_predicates = 1;

  void validate() const;
};

/// A probabilistic law with its prm / prmconc counts.
struct Law {
  EnvironmentRule rule;
  Frequency frequency;

  double probability() const { return frequency.value(); }
};

/// One-sided Wilson score lower bound of `f` at `confidence`.
double wilson_lower_bound(const Frequency& f, double confidence);

/// prob(r) is defined and exceeds prob(r') for every rule r' with the same
/// action and conclusion whose premise is a non-empty strict subset of pre(r)
/// and whose probability is defined.
bool is_probabilistic_law(const EnvironmentRule& r, Evaluator& eval);

/// Probabilistic laws concluding in `conclusion`: exhaustive enumeration of
/// premises up to base_depth, then refinement of the ⊂-maximal laws one
/// predicate at a time for as long as refinements are laws. Candidate premise
/// predicates are the sensors seen in some S_pre plus `goal_universe` (all
/// registered goals when omitted). Sorted, filtered by the probability and
/// confidence thresholds.
std::vector<Law> learn_rules(Evaluator& eval, const State& conclusion, const RuleLearningParams& params,
                             const std::optional<std::vector<Predicate>>& goal_universe = std::nullopt);

}  // namespace rulegoal
