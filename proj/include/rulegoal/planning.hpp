#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rulegoal/policy_learning.hpp"
#include "rulegoal/rng.hpp"

namespace rulegoal {

/// What the agent knows right now: the latest observation and the goals that
/// currently hold.
struct Situation {
  State sensors;
  std::set<std::string> achieved;

  bool satisfies(const Predicate& p) const;
};

/// Situation after the last tuple of `buffer`. Throws std::invalid_argument on an empty buffer.
Situation current_situation(const ReplayBuffer& buffer, const GoalHierarchy& goals);

/// Incrementally tracks which goals hold, tuple by tuple, with the same
/// reset rule as the evaluator.
class GoalTracker {
 public:
  explicit GoalTracker(const GoalHierarchy& goals) : goals_(&goals) {}

  /// Forgets every achievement (start of a new segment).
  void reset() { achieved_.clear(); }
  /// Accounts for a tuple whose S_post is `post`.
  void observe(const State& post);
  /// Recomputes from scratch after the hierarchy changed.
  void rebuild(const ReplayBuffer& buffer);

  const std::set<std::string>& achieved() const { return achieved_; }

 private:
  const GoalHierarchy* goals_;
  std::set<std::string> achieved_;
};

/// Learned policies per goal name.
class PolicyStore {
 public:
  void set(const std::string& goal, std::vector<ScoredPolicy> policies);
  const std::vector<ScoredPolicy>& policies(const std::string& goal) const;
  void erase(const std::string& goal) { store_.erase(goal); }
  /// Drops one policy of `goal`; false if it was not there.
  bool remove(const std::string& goal, const Policy& policy);
  std::size_t total() const;
  const std::map<std::string, std::vector<ScoredPolicy>>& all() const { return store_; }

 private:
  std::map<std::string, std::vector<ScoredPolicy>> store_;
};

struct PlanResult {
  std::string action;
  bool was_random = true;
  /// Policy whose primary action was chosen, and its rank.
  std::optional<Policy> policy;
  double rank = 0.0;
  /// Goals visited from the top-level goal down to the one acted for.
  std::vector<std::string> path;

  std::string trace() const;
};

/// Ranks and chooses policies for one situation. Ranks are memoized, so a
/// planner must not outlive changes to the store, hierarchy or situation.
class Planner {
 public:
  Planner(const PolicyStore& store, const GoalHierarchy& goals, Situation situation);

  double rank(const ScoredPolicy& p);
  /// The rank-maximal policies for `goal`, shortest first, then by serialization.
  std::vector<const ScoredPolicy*> best_policies(const std::string& goal);
  /// Best rank among the policies for `goal`, 0 if there are none.
  double best_rank(const std::string& goal);
  /// A planned action for `goal`, or nullopt if no policy applies on any path.
  std::optional<PlanResult> plan(const std::string& goal);

 private:
  std::optional<PlanResult> plan(const std::string& goal, std::set<std::string>& visiting);
  double rank(const ScoredPolicy& p, std::set<std::string>& visiting);
  double best_rank(const std::string& goal, std::set<std::string>& visiting);

  const PolicyStore* store_;
  const GoalHierarchy* goals_;
  Situation situation_;
  std::map<const ScoredPolicy*, double> ranks_;
  std::map<std::string, double> best_;
};

/// Plans for `goal`, falling back to a uniformly random action from `actions`.
PlanResult plan(const std::string& goal, const PolicyStore& store, const GoalHierarchy& goals,
                const Situation& situation, const std::vector<std::string>& actions, Rng& rng);

}  // namespace rulegoal
