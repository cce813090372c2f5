#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rulegoal/core/semantics.hpp"
#include "rulegoal/rule_learning.hpp"

namespace rulegoal {

struct PolicyLearningParams {
  std::size_t max_policy_length = 4;
  /// Policies below this fitness are not refined; refined policies below it are dropped.
  double fitness_gain_threshold = 0.5;
  FitnessKind fitness_kind = FitnessKind::standard;

  void validate() const;
};

struct ScoredPolicy {
  Policy policy;
  double fitness = 0.0;

  friend bool operator==(const ScoredPolicy&, const ScoredPolicy&) = default;
};

/// Memoizes learn_rules per (conclusion, goal universe) over one snapshot.
class LawCache {
 public:
  LawCache(Evaluator& eval, RuleLearningParams params);

  const std::vector<Law>& laws(const State& conclusion, const std::optional<std::vector<Predicate>>& goals);
  Evaluator& evaluator() { return *eval_; }
  const RuleLearningParams& params() const { return params_; }
  /// Every law computed so far, sorted and deduplicated.
  std::vector<Law> all_laws() const;

 private:
  Evaluator* eval_;
  RuleLearningParams params_;
  std::map<std::pair<State, std::optional<std::vector<Predicate>>>, std::vector<Law>> cache_;
};

/// Keeps rules whose premise and conclusion carry the same goal predicates.
std::vector<Law> filter_by_goals(std::vector<Law> rules);
std::vector<EnvironmentRule> filter_by_goals(std::vector<EnvironmentRule> rules);

/// Drops each candidate P for which `against` holds a variant P' with
/// fitness(P) ≤ fitness(P') and len(P') < len(P).
std::vector<ScoredPolicy> get_strong(std::vector<ScoredPolicy> candidates,
                                     const std::vector<ScoredPolicy>& against);

/// Policies for `goal` built backwards from probabilistic laws. Policy
/// premises may mention the goals in `goal_universe` (all registered goals if
/// omitted). Undefined-fitness policies are dropped. Sorted by policy order.
std::vector<ScoredPolicy> learn_policies(LawCache& laws, const State& goal, const PolicyLearningParams& params,
                                         const std::optional<std::vector<Predicate>>& goal_universe = std::nullopt);
std::vector<ScoredPolicy> learn_policies(Evaluator& eval, const State& goal, const RuleLearningParams& rule_params,
                                         const PolicyLearningParams& params,
                                         const std::optional<std::vector<Predicate>>& goal_universe = std::nullopt);

/// Goals strictly below `goal`, as predicates: the goal universe for learning
/// policies toward `goal`.
std::vector<Predicate> subordinate_goal_universe(const GoalHierarchy& goals, const std::string& goal);

}  // namespace rulegoal
