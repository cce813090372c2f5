#include "rulegoal/planning.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>

namespace rulegoal {

bool Situation::satisfies(const Predicate& p) const {
  if (p.is_goal()) return achieved.count(p.name()) > 0;
  return sensors.contains(p);
}

namespace {

std::set<std::string> achieved_after_last(const ReplayBuffer& buffer, const GoalHierarchy& goals) {
  Evaluator eval(buffer, goals);
  std::set<std::string> out;
  const std::size_t last = buffer.size() - 1;
  for (const auto& name : goals.registry().names()) {
    if (eval.outcome(Predicate::goal(name)).test(last)) out.insert(name);
  }
  return out;
}

}  // namespace

Situation current_situation(const ReplayBuffer& buffer, const GoalHierarchy& goals) {
  if (buffer.empty()) throw std::invalid_argument("no situation for an empty buffer");
  return {buffer.back().post, achieved_after_last(buffer, goals)};
}

void GoalTracker::observe(const State& post) {
  std::set<std::string> next;
  for (const auto& name : goals_->registry().names()) {
    const bool held = achieved_.count(name) > 0;
    const bool reached = post.includes(goals_->interpretation(name));
    if (!held && !reached) continue;
    const auto above = goals_->strictly_above(name);
    const bool reset = std::any_of(above.begin(), above.end(),
                                   [&](const std::string& u) { return post.includes(goals_->interpretation(u)); });
    if (!reset) next.insert(name);
  }
  achieved_ = std::move(next);
}

void GoalTracker::rebuild(const ReplayBuffer& buffer) {
  achieved_.clear();
  if (!buffer.empty()) achieved_ = achieved_after_last(buffer, *goals_);
}

void PolicyStore::set(const std::string& goal, std::vector<ScoredPolicy> policies) {
  store_[goal] = std::move(policies);
}

const std::vector<ScoredPolicy>& PolicyStore::policies(const std::string& goal) const {
  static const std::vector<ScoredPolicy> none;
  auto it = store_.find(goal);
  return it == store_.end() ? none : it->second;
}

bool PolicyStore::remove(const std::string& goal, const Policy& policy) {
  auto it = store_.find(goal);
  if (it == store_.end()) return false;
  auto& v = it->second;
  auto hit = std::find_if(v.begin(), v.end(), [&](const ScoredPolicy& s) { return s.policy == policy; });
  if (hit == v.end()) return false;
  v.erase(hit);
  return true;
}

std::size_t PolicyStore::total() const {
  std::size_t n = 0;
  for (const auto& [_, v] : store_) n += v.size();
  return n;
}

std::string PlanResult::trace() const {
  if (was_random) return fmt::format("random {}", action);
  return fmt::format("{} via [{}] rank {:.4f} policy {}", action, fmt::join(path, " > "), rank,
                     policy ? policy->text() : "");
}

Planner::Planner(const PolicyStore& store, const GoalHierarchy& goals, Situation situation)
    : store_(&store), goals_(&goals), situation_(std::move(situation)) {}

double Planner::rank(const ScoredPolicy& p) {
  std::set<std::string> visiting;
  return rank(p, visiting);
}

double Planner::rank(const ScoredPolicy& p, std::set<std::string>& visiting) {
  if (auto it = ranks_.find(&p); it != ranks_.end()) return it->second;
  double r = 0.0;
  const State& premise = p.policy.premise();
  const bool applicable = std::all_of(premise.begin(), premise.end(), [&](const Predicate& q) {
    return q.is_goal() || situation_.sensors.contains(q);
  });
  if (applicable) {
    r = p.fitness;
    for (const auto& g : p.policy.subgoals()) {
      if (situation_.achieved.count(g.name())) continue;
      r *= best_rank(g.name(), visiting);
      if (r == 0.0) break;
    }
  }
  ranks_[&p] = r;
  return r;
}

double Planner::best_rank(const std::string& goal) {
  std::set<std::string> visiting;
  return best_rank(goal, visiting);
}

double Planner::best_rank(const std::string& goal, std::set<std::string>& visiting) {
  if (auto it = best_.find(goal); it != best_.end()) return it->second;
  // A goal already on the recursion path cannot help achieve itself.
  if (!visiting.insert(goal).second) return 0.0;
  double best = 0.0;
  for (const auto& p : store_->policies(goal)) best = std::max(best, rank(p, visiting));
  visiting.erase(goal);
  best_[goal] = best;
  return best;
}

std::vector<const ScoredPolicy*> Planner::best_policies(const std::string& goal) {
  std::vector<const ScoredPolicy*> out;
  const double top = best_rank(goal);
  for (const auto& p : store_->policies(goal)) {
    if (rank(p) == top) out.push_back(&p);
  }
  // Equal ranks: the shorter policy reaches the goal sooner. Without this a
  // longer policy can win the text order in every step and the agent turns in place.
  std::sort(out.begin(), out.end(), [](const ScoredPolicy* a, const ScoredPolicy* b) {
    if (a->policy.length() != b->policy.length()) return a->policy.length() < b->policy.length();
    return a->policy.text() < b->policy.text();
  });
  return out;
}

std::optional<PlanResult> Planner::plan(const std::string& goal) {
  std::set<std::string> visiting;
  return plan(goal, visiting);
}

std::optional<PlanResult> Planner::plan(const std::string& goal, std::set<std::string>& visiting) {
  if (!visiting.insert(goal).second) return std::nullopt;
  std::optional<PlanResult> found;
  for (const ScoredPolicy* p : best_policies(goal)) {
    const double r = rank(*p);
    if (r == 0.0) continue;
    std::set<std::string> open;
    for (const auto& g : p->policy.subgoals()) {
      if (!situation_.achieved.count(g.name())) open.insert(g.name());
    }
    if (open.empty()) {
      found = PlanResult{p->policy.primary_action(), false, p->policy, r, {goal}};
      break;
    }
    const std::string next = goals_->minimal_first(open).front();
    if (auto sub = plan(next, visiting)) {
      sub->path.insert(sub->path.begin(), goal);
      found = std::move(sub);
      break;
    }
  }
  visiting.erase(goal);
  return found;
}

PlanResult plan(const std::string& goal, const PolicyStore& store, const GoalHierarchy& goals,
                const Situation& situation, const std::vector<std::string>& actions, Rng& rng) {
  Planner planner(store, goals, situation);
  if (auto result = planner.plan(goal)) return *result;
  if (actions.empty()) throw std::invalid_argument("no actions to choose from");
  PlanResult r;
  r.action = actions[rng.below(actions.size())];
  return r;
}

}  // namespace rulegoal
