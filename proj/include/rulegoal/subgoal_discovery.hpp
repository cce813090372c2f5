#pragma once

#include <string>
#include <vector>

#include "rulegoal/policy_learning.hpp"

namespace rulegoal {

/// How AvgFq counts successes: distinct ending tuples, or distinct starting
/// tuples whose chain reached the target.
enum class SuccessCounting { ending_points, successful_starts };

struct SubgoalParams {
  double beta = 0.2;
  std::size_t max_subgoal_size = 2;
  /// Accepted candidates per call, best gain first; 0 accepts every candidate that passes.
  std::size_t max_accepts_per_call = 1;
  SuccessCounting counting = SuccessCounting::successful_starts;
  /// The updated aggregate is scored by its one-sided Wilson lower bound at
  /// this confidence; 0.5 or less uses the plain ratio.
  double confidence = 0.9;
  /// Probability floor for the laws behind the best policies. A goal that
  /// fails most of the time has no laws at the learning floor, yet it is the
  /// one a subgoal can fix.
  double law_probability_threshold = 0.0;

  void validate() const;
};

/// e/s where s counts tuples that start some policy and e counts tuples that
/// end some policy; 0 when s = 0.
double avg_fq_fitness(const std::vector<Policy>& policies, Evaluator& eval,
                      SuccessCounting counting = SuccessCounting::ending_points);

/// Inserts goal predicate `goal` into every step of `p`.
Policy with_subgoal(const Policy& p, const Predicate& goal);

/// Success and start counts behind avg_fq_fitness.
Frequency avg_fq_counts(const std::vector<Policy>& policies, Evaluator& eval,
                        SuccessCounting counting = SuccessCounting::ending_points);

struct AcceptedSubgoal {
  std::string name;
  State interpretation;
  std::string parent;
  double gain = 0.0;
};

struct DiscoveryReport {
  std::vector<AcceptedSubgoal> accepted;
  std::size_t best_policies = 0;
  std::size_t candidates = 0;
  double baseline = 0.0;
};

/// One round of subgoal discovery for `goal`. Accepted subgoals are added to
/// `goals` directly below `goal`. At most `capacity` goals are added.
DiscoveryReport discover(const ReplayBuffer& buffer, GoalHierarchy& goals, const std::string& goal,
                         const RuleLearningParams& rule_params, const PolicyLearningParams& policy_params,
                         const SubgoalParams& params, std::size_t capacity = static_cast<std::size_t>(-1));

}  // namespace rulegoal
