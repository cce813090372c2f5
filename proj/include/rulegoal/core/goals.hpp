#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "rulegoal/core/state.hpp"

namespace rulegoal {

inline constexpr const char* kPrimaryGoal = "G_prime";

/// The finite active goal set drawn from an unbounded supply of names.
/// Names are `G_<n>`; a name handed out once is never handed out again, even
/// after the goal is retired.
class GoalRegistry {
 public:
  GoalRegistry();

  std::string invent();
  /// Registers an explicit name (loading persisted hierarchies).
  void adopt(const std::string& name);
  void retire(const std::string& name);

  bool active(const std::string& name) const { return active_.count(name) > 0; }
  bool retired(const std::string& name) const { return retired_.count(name) > 0; }
  const std::set<std::string>& names() const { return active_; }
  std::size_t size() const { return active_.size(); }

 private:
  std::set<std::string> active_;
  std::set<std::string> retired_;
  unsigned long next_ = 1;
};

/// Partial order ⊑ over goal names, stored as immediate "below" edges.
class GoalPoset {
 public:
  /// Adds `lower ⊑ upper`. Throws std::logic_error if this would create a cycle.
  void insert(const std::string& lower, const std::string& upper);
  void erase(const std::string& name);

  /// a ⊑ b (reflexive).
  bool leq(const std::string& a, const std::string& b) const;
  /// a ⊏ b.
  bool less(const std::string& a, const std::string& b) const { return a != b && leq(a, b); }

  std::set<std::string> strictly_above(const std::string& name) const;
  std::set<std::string> strictly_below(const std::string& name) const;
  const std::map<std::string, std::set<std::string>>& edges() const { return up_; }

 private:
  std::map<std::string, std::set<std::string>> up_;
};

/// Registry, order and interpretation π together: everything the truth of goal
/// predicates depends on besides the transitions themselves.
class GoalHierarchy {
 public:
  explicit GoalHierarchy(State primary_goal_state);

  const GoalRegistry& registry() const { return registry_; }
  const GoalPoset& poset() const { return poset_; }

  /// π(name). Throws std::out_of_range for unregistered goals.
  const State& interpretation(const std::string& name) const;
  bool contains(const std::string& name) const { return registry_.active(name); }

  /// Invents a fresh goal with π = `interpretation` placed directly below `parent`.
  std::string add_subgoal(const State& interpretation, const std::string& parent);
  /// Registers a goal under an explicit name (used when loading files).
  void adopt_subgoal(const std::string& name, const State& interpretation, const std::string& parent);
  /// Removes a goal from the active set; the name stays burned.
  void retire(const std::string& name);

  /// Direct subgoals of `goal` whose interpretation equals `s`.
  bool has_subgoal_with(const std::string& goal, const State& s) const;

  std::set<std::string> strictly_above(const std::string& name) const;
  std::set<std::string> strictly_below(const std::string& name) const;

  /// Active goals ordered most-subordinate first (longest chain up to the primary
  /// goal first), ties by name.
  std::vector<std::string> subordinate_order() const;
  /// Orders a set of goals so that ⊑-minimal members come first, ties by name.
  std::vector<std::string> minimal_first(const std::set<std::string>& goals) const;

  std::size_t subgoal_count() const { return registry_.size() - 1; }

  /// Checks the partial-order invariants: acyclic, primary goal above everything,
  /// π total on active goals. Throws std::logic_error on violation.
  void validate() const;

 private:
  GoalRegistry registry_;
  GoalPoset poset_;
  std::map<std::string, State> pi_;
};

}  // namespace rulegoal
