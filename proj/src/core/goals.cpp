#include "rulegoal/core/goals.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <stdexcept>

namespace rulegoal {

GoalRegistry::GoalRegistry() { active_.insert(kPrimaryGoal); }

std::string GoalRegistry::invent() {
  std::string name;
  do {
    name = "G_" + std::to_string(next_++);
  } while (active_.count(name) || retired_.count(name));
  active_.insert(name);
  return name;
}

void GoalRegistry::adopt(const std::string& name) {
  if (!is_goal_name(name)) throw std::invalid_argument("invalid goal name: " + name);
  if (active_.count(name) || retired_.count(name)) {
    throw std::invalid_argument("goal name already used: " + name);
  }
  active_.insert(name);
  unsigned long n = 0;
  const char* first = name.data() + 2;
  const char* last = name.data() + name.size();
  if (auto [ptr, ec] = std::from_chars(first, last, n); ec == std::errc{} && ptr == last) {
    next_ = std::max(next_, n + 1);
  }
}

void GoalRegistry::retire(const std::string& name) {
  if (name == kPrimaryGoal) throw std::logic_error("the primary goal cannot be retired");
  if (active_.erase(name) == 0) throw std::out_of_range("unknown goal: " + name);
  retired_.insert(name);
}

void GoalPoset::insert(const std::string& lower, const std::string& upper) {
  if (leq(upper, lower)) {
    throw std::logic_error("goal order cycle: " + upper + " is already below " + lower);
  }
  up_[lower].insert(upper);
}

void GoalPoset::erase(const std::string& name) {
  up_.erase(name);
  for (auto& [_, ups] : up_) ups.erase(name);
}

bool GoalPoset::leq(const std::string& a, const std::string& b) const {
  if (a == b) return true;
  auto it = up_.find(a);
  if (it == up_.end()) return false;
  for (const auto& u : it->second) {
    if (leq(u, b)) return true;
  }
  return false;
}

std::set<std::string> GoalPoset::strictly_above(const std::string& name) const {
  std::set<std::string> out;
  std::vector<std::string> todo{name};
  while (!todo.empty()) {
    auto cur = todo.back();
    todo.pop_back();
    auto it = up_.find(cur);
    if (it == up_.end()) continue;
    for (const auto& u : it->second) {
      if (out.insert(u).second) todo.push_back(u);
    }
  }
  return out;
}

std::set<std::string> GoalPoset::strictly_below(const std::string& name) const {
  std::set<std::string> out;
  for (const auto& [lower, _] : up_) {
    if (lower != name && leq(lower, name)) out.insert(lower);
  }
  return out;
}

GoalHierarchy::GoalHierarchy(State primary_goal_state) {
  if (primary_goal_state.empty()) throw std::invalid_argument("primary goal state must be non-empty");
  if (!primary_goal_state.goals().empty()) {
    throw std::invalid_argument("goal interpretations are sensor states");
  }
  pi_.emplace(kPrimaryGoal, std::move(primary_goal_state));
}

const State& GoalHierarchy::interpretation(const std::string& name) const {
  auto it = pi_.find(name);
  if (it == pi_.end() || !registry_.active(name)) throw std::out_of_range("unregistered goal: " + name);
  return it->second;
}

std::string GoalHierarchy::add_subgoal(const State& interpretation, const std::string& parent) {
  if (!contains(parent)) throw std::out_of_range("unregistered parent goal: " + parent);
  if (interpretation.empty() || !interpretation.goals().empty()) {
    throw std::invalid_argument("goal interpretations are non-empty sensor states");
  }
  std::string name = registry_.invent();
  pi_[name] = interpretation;
  poset_.insert(name, parent);
  return name;
}

void GoalHierarchy::adopt_subgoal(const std::string& name, const State& interpretation,
                                  const std::string& parent) {
  if (!contains(parent)) throw std::out_of_range("unregistered parent goal: " + parent);
  if (interpretation.empty() || !interpretation.goals().empty()) {
    throw std::invalid_argument("goal interpretations are non-empty sensor states");
  }
  registry_.adopt(name);
  pi_[name] = interpretation;
  poset_.insert(name, parent);
}

void GoalHierarchy::retire(const std::string& name) {
  registry_.retire(name);
  poset_.erase(name);
  pi_.erase(name);
}

bool GoalHierarchy::has_subgoal_with(const std::string& goal, const State& s) const {
  for (const auto& name : registry_.names()) {
    if (name != goal && poset_.leq(name, goal) && pi_.at(name) == s) return true;
  }
  return false;
}

std::set<std::string> GoalHierarchy::strictly_above(const std::string& name) const {
  if (!contains(name)) throw std::out_of_range("unregistered goal: " + name);
  return poset_.strictly_above(name);
}

std::set<std::string> GoalHierarchy::strictly_below(const std::string& name) const {
  if (!contains(name)) throw std::out_of_range("unregistered goal: " + name);
  return poset_.strictly_below(name);
}

std::vector<std::string> GoalHierarchy::subordinate_order() const {
  std::map<std::string, std::size_t> depth;
  std::function<std::size_t(const std::string&)> longest = [&](const std::string& g) -> std::size_t {
    if (auto it = depth.find(g); it != depth.end()) return it->second;
    std::size_t best = 0;
    if (auto it = poset_.edges().find(g); it != poset_.edges().end()) {
      for (const auto& u : it->second) best = std::max(best, longest(u) + 1);
    }
    return depth[g] = best;
  };
  std::vector<std::string> out(registry_.names().begin(), registry_.names().end());
  for (const auto& g : out) longest(g);
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& a, const auto& b) { return depth[a] > depth[b]; });
  return out;
}

std::vector<std::string> GoalHierarchy::minimal_first(const std::set<std::string>& goals) const {
  std::vector<std::pair<std::size_t, std::string>> keyed;
  for (const auto& g : goals) keyed.emplace_back(poset_.strictly_below(g).size(), g);
  std::sort(keyed.begin(), keyed.end());
  std::vector<std::string> out;
  for (auto& [_, g] : keyed) out.push_back(std::move(g));
  return out;
}

void GoalHierarchy::validate() const {
  for (const auto& name : registry_.names()) {
    if (!pi_.count(name)) throw std::logic_error("goal without interpretation: " + name);
    if (!poset_.leq(name, kPrimaryGoal)) throw std::logic_error("goal not below primary goal: " + name);
    for (const auto& up : poset_.strictly_above(name)) {
      if (up == name || poset_.leq(up, name)) throw std::logic_error("goal order cycle at " + name);
    }
  }
  if (!poset_.strictly_above(kPrimaryGoal).empty()) {
    throw std::logic_error("primary goal is not the supremum");
  }
}

}  // namespace rulegoal
