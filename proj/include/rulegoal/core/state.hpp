#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "rulegoal/core/predicate.hpp"

namespace rulegoal {

/// Finite set of sensor and goal predicates, kept sorted by serialized text.
class State {
 public:
  State() = default;
  State(std::initializer_list<Predicate> preds);
  explicit State(std::vector<Predicate> preds);

  /// Inserts `p`; returns false if already present. Throws for action predicates.
  bool insert(const Predicate& p);
  bool erase(const Predicate& p);
  bool contains(const Predicate& p) const;
  /// Set inclusion: every member of `other` is in *this.
  bool includes(const State& other) const;

  std::size_t size() const { return preds_.size(); }
  bool empty() const { return preds_.empty(); }

  State goals() const;
  State sensors() const;
  State with(const Predicate& p) const;
  State without(const Predicate& p) const;

  auto begin() const { return preds_.begin(); }
  auto end() const { return preds_.end(); }
  const std::vector<Predicate>& predicates() const { return preds_; }

  /// Comma separated predicates, e.g. `Center(type3), PickedUp`.
  std::string text() const;

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State& a, const State& b) { return a.preds_ <=> b.preds_; }

 private:
  std::vector<Predicate> preds_;
};

/// a ⊂ b (strict inclusion).
bool strict_subset(const State& a, const State& b);

}  // namespace rulegoal
