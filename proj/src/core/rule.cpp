#include "rulegoal/core/rule.hpp"

#include <stdexcept>

namespace rulegoal {

EnvironmentRule::EnvironmentRule(State premise, std::string action, State conclusion)
    : premise_(std::move(premise)), action_(std::move(action)), conclusion_(std::move(conclusion)) {
  if (premise_.empty()) throw std::invalid_argument("environment rule needs a non-empty premise");
  if (conclusion_.empty()) throw std::invalid_argument("environment rule needs a non-empty conclusion");
  if (action_.empty()) throw std::invalid_argument("environment rule needs an action");
}

EnvironmentRule EnvironmentRule::refined(const Predicate& p) const {
  return EnvironmentRule(premise_.with(p), action_, conclusion_);
}

std::string EnvironmentRule::text() const {
  return premise_.text() + ", " + action_ + " -> " + conclusion_.text();
}

bool is_refinement(const EnvironmentRule& refinement, const EnvironmentRule& rule) {
  return refinement.action() == rule.action() && refinement.conclusion() == rule.conclusion() &&
         refinement.premise().size() == rule.premise().size() + 1 &&
         refinement.premise().includes(rule.premise());
}

Policy::Policy(std::vector<PolicyStep> steps, State target)
    : steps_(std::move(steps)), target_(std::move(target)) {
  if (steps_.empty()) throw std::invalid_argument("policy needs at least one step");
  if (target_.empty()) throw std::invalid_argument("policy needs a non-empty target");
  const State shared = steps_.front().state.goals();
  for (const auto& step : steps_) {
    if (step.state.empty()) throw std::invalid_argument("policy step state is empty");
    if (step.action.empty()) throw std::invalid_argument("policy step without action");
    if (step.state.goals() != shared) {
      throw std::invalid_argument("policy steps disagree on goal predicates: " + step.state.text());
    }
  }
}

EnvironmentRule Policy::transition(std::size_t i) const {
  const State& next = i + 1 < steps_.size() ? steps_[i + 1].state : target_;
  return EnvironmentRule(steps_.at(i).state, steps_[i].action, next);
}

std::string Policy::text() const {
  std::string out;
  for (const auto& step : steps_) {
    out += step.state.text();
    out += " {";
    out += step.action;
    out += "} ";
  }
  out += target_.text();
  return out;
}

Policy policy_from_rule(const EnvironmentRule& r) {
  return Policy({PolicyStep{r.premise(), r.action()}}, r.conclusion());
}

Policy refine_policy(const Policy& p, const EnvironmentRule& r) {
  if (r.conclusion() != p.premise()) {
    throw std::invalid_argument("REFN: conclusion of " + r.text() + " is not the premise of " + p.text());
  }
  if (r.premise().goals() != p.premise().goals()) {
    throw std::invalid_argument("REFN: rule " + r.text() + " changes the goal predicates");
  }
  std::vector<PolicyStep> steps;
  steps.reserve(p.length() + 1);
  steps.push_back(PolicyStep{r.premise(), r.action()});
  steps.insert(steps.end(), p.steps().begin(), p.steps().end());
  return Policy(std::move(steps), p.target());
}

bool is_variant(const Policy& candidate, const Policy& of) {
  return candidate.target() == of.target() && of.premise().includes(candidate.premise()) &&
         !(candidate == of);
}

}  // namespace rulegoal
