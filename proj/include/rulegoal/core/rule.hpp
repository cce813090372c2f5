#pragma once

#include <string>
#include <vector>

#include "rulegoal/core/state.hpp"

namespace rulegoal {

/// `premise, action -> conclusion`; both states non-empty.
class EnvironmentRule {
 public:
  EnvironmentRule(State premise, std::string action, State conclusion);

  const State& premise() const { return premise_; }
  const std::string& action() const { return action_; }
  const State& conclusion() const { return conclusion_; }

  /// Same rule with `p` added to the premise (one refinement step).
  EnvironmentRule refined(const Predicate& p) const;

  std::string text() const;

  friend bool operator==(const EnvironmentRule&, const EnvironmentRule&) = default;
  friend auto operator<=>(const EnvironmentRule& a, const EnvironmentRule& b) {
    if (auto c = a.conclusion_ <=> b.conclusion_; c != 0) return c;
    if (auto c = a.action_ <=> b.action_; c != 0) return c;
    return a.premise_ <=> b.premise_;
  }

 private:
  State premise_;
  std::string action_;
  State conclusion_;
};

/// True when `refinement` extends the premise of `rule` by exactly one predicate
/// while keeping action and conclusion.
bool is_refinement(const EnvironmentRule& refinement, const EnvironmentRule& rule);

struct PolicyStep {
  State state;
  std::string action;

  friend bool operator==(const PolicyStep&, const PolicyStep&) = default;
  friend auto operator<=>(const PolicyStep&, const PolicyStep&) = default;
};

/// `S1 {A1} ... Sn {An} G`. Every step state carries the same set of goal
/// predicates, so subgoals are neither lost nor gained along the way.
class Policy {
 public:
  Policy(std::vector<PolicyStep> steps, State target);

  const std::vector<PolicyStep>& steps() const { return steps_; }
  const State& target() const { return target_; }
  const State& premise() const { return steps_.front().state; }
  const std::string& primary_action() const { return steps_.front().action; }
  std::size_t length() const { return steps_.size(); }
  /// The goal predicates shared by all step states.
  State subgoals() const { return steps_.front().state.goals(); }

  /// The transition rule `S_i, A_i -> S_{i+1}` (S_{n+1} is the target).
  EnvironmentRule transition(std::size_t i) const;

  std::string text() const;

  friend bool operator==(const Policy&, const Policy&) = default;
  friend auto operator<=>(const Policy& a, const Policy& b) {
    if (auto c = a.target_ <=> b.target_; c != 0) return c;
    return a.steps_ <=> b.steps_;
  }

 private:
  std::vector<PolicyStep> steps_;
  State target_;
};

/// A length-1 policy `pre(r) {action(r)} post(r)`.
Policy policy_from_rule(const EnvironmentRule& r);

/// REFN(p, r): prepends `r` to `p`. Requires post(r) = pre(p) and equal goal
/// subsets in pre(r) and pre(p); throws std::invalid_argument otherwise.
Policy refine_policy(const Policy& p, const EnvironmentRule& r);

/// `candidate` is a variant of `of`: same target, pre(candidate) ⊆ pre(of), different policy.
bool is_variant(const Policy& candidate, const Policy& of);

}  // namespace rulegoal
