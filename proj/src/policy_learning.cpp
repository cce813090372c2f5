#include "rulegoal/policy_learning.hpp"

#include <algorithm>
#include <stdexcept>

namespace rulegoal {

void PolicyLearningParams::validate() const {
  if (max_policy_length < 1) throw std::invalid_argument("max_policy_length must be >= 1");
  if (fitness_gain_threshold < 0.0 || fitness_gain_threshold > 1.0) {
    throw std::invalid_argument("fitness_gain_threshold must lie in [0,1]");
  }
}

LawCache::LawCache(Evaluator& eval, RuleLearningParams params) : eval_(&eval), params_(params) {
  params_.validate();
}

const std::vector<Law>& LawCache::laws(const State& conclusion,
                                       const std::optional<std::vector<Predicate>>& goals) {
  auto key = std::make_pair(conclusion, goals);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  return cache_[key] = learn_rules(*eval_, conclusion, params_, goals);
}

std::vector<Law> LawCache::all_laws() const {
  std::vector<Law> out;
  for (const auto& [_, laws] : cache_) out.insert(out.end(), laws.begin(), laws.end());
  std::sort(out.begin(), out.end(), [](const Law& a, const Law& b) { return a.rule < b.rule; });
  out.erase(std::unique(out.begin(), out.end(), [](const Law& a, const Law& b) { return a.rule == b.rule; }),
            out.end());
  return out;
}

std::vector<Law> filter_by_goals(std::vector<Law> rules) {
  std::erase_if(rules, [](const Law& l) { return l.rule.premise().goals() != l.rule.conclusion().goals(); });
  return rules;
}

std::vector<EnvironmentRule> filter_by_goals(std::vector<EnvironmentRule> rules) {
  std::erase_if(rules, [](const EnvironmentRule& r) { return r.premise().goals() != r.conclusion().goals(); });
  return rules;
}

std::vector<ScoredPolicy> get_strong(std::vector<ScoredPolicy> candidates,
                                     const std::vector<ScoredPolicy>& against) {
  // Fitness values are products of ratios computed in different orders, so
  // equal products can differ in the last bits.
  constexpr double kTie = 1e-12;
  std::erase_if(candidates, [&](const ScoredPolicy& p) {
    return std::any_of(against.begin(), against.end(), [&](const ScoredPolicy& q) {
      return q.policy.length() < p.policy.length() && p.fitness <= q.fitness + kTie &&
             is_variant(q.policy, p.policy);
    });
  });
  return candidates;
}

std::vector<ScoredPolicy> learn_policies(LawCache& laws, const State& goal, const PolicyLearningParams& params,
                                         const std::optional<std::vector<Predicate>>& goal_universe) {
  if (goal.empty()) throw std::invalid_argument("learn_policies needs a non-empty goal state");
  params.validate();
  Evaluator& eval = laws.evaluator();
  auto score = [&](const Policy& p) { return policy_fitness(p, eval, params.fitness_kind); };

  std::map<Policy, double> pol;
  for (const auto& law : laws.laws(goal, goal_universe)) {
    Policy p = policy_from_rule(law.rule);
    if (auto f = score(p)) pol.emplace(std::move(p), *f);
  }
  std::vector<ScoredPolicy> frontier;
  for (const auto& [p, f] : pol) {
    if (f >= params.fitness_gain_threshold) frontier.push_back({p, f});
  }

  // Each pass extends policies by one step, so the pass count is bounded by
  // the length cap even when the state graph has cycles.
  for (std::size_t pass = 1; pass < params.max_policy_length && !frontier.empty(); ++pass) {
    std::map<Policy, double> refined;
    for (const auto& base : frontier) {
      for (const auto& law : filter_by_goals(laws.laws(base.policy.premise(), goal_universe))) {
        Policy q = refine_policy(base.policy, law.rule);
        if (pol.count(q) || refined.count(q)) continue;
        if (auto f = score(q)) refined.emplace(std::move(q), *f);
      }
    }
    std::vector<ScoredPolicy> candidates;
    for (auto& [p, f] : refined) candidates.push_back({p, f});
    std::vector<ScoredPolicy> current;
    current.reserve(pol.size());
    for (const auto& [p, f] : pol) current.push_back({p, f});

    frontier.clear();
    for (auto& sp : get_strong(std::move(candidates), current)) {
      if (sp.fitness < params.fitness_gain_threshold) continue;
      pol.emplace(sp.policy, sp.fitness);
      frontier.push_back(std::move(sp));
    }
  }

  std::vector<ScoredPolicy> out;
  out.reserve(pol.size());
  for (auto& [p, f] : pol) out.push_back({p, f});
  return out;
}

std::vector<ScoredPolicy> learn_policies(Evaluator& eval, const State& goal, const RuleLearningParams& rule_params,
                                         const PolicyLearningParams& params,
                                         const std::optional<std::vector<Predicate>>& goal_universe) {
  LawCache cache(eval, rule_params);
  return learn_policies(cache, goal, params, goal_universe);
}

std::vector<Predicate> subordinate_goal_universe(const GoalHierarchy& goals, const std::string& goal) {
  std::vector<Predicate> out;
  for (const auto& g : goals.strictly_below(goal)) out.push_back(Predicate::goal(g));
  return out;
}

}  // namespace rulegoal
