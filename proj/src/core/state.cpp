#include "rulegoal/core/state.hpp"

#include <algorithm>
#include <stdexcept>

namespace rulegoal {

State::State(std::initializer_list<Predicate> preds) : State(std::vector<Predicate>(preds)) {}

State::State(std::vector<Predicate> preds) {
  for (const auto& p : preds) {
    if (p.is_action()) throw std::invalid_argument("state cannot hold action predicate " + p.text());
  }
  std::sort(preds.begin(), preds.end());
  preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  preds_ = std::move(preds);
}

bool State::insert(const Predicate& p) {
  if (p.is_action()) throw std::invalid_argument("state cannot hold action predicate " + p.text());
  auto it = std::lower_bound(preds_.begin(), preds_.end(), p);
  if (it != preds_.end() && *it == p) return false;
  preds_.insert(it, p);
  return true;
}

bool State::erase(const Predicate& p) {
  auto it = std::lower_bound(preds_.begin(), preds_.end(), p);
  if (it == preds_.end() || !(*it == p)) return false;
  preds_.erase(it);
  return true;
}

bool State::contains(const Predicate& p) const {
  return std::binary_search(preds_.begin(), preds_.end(), p);
}

bool State::includes(const State& other) const {
  return std::includes(preds_.begin(), preds_.end(), other.preds_.begin(), other.preds_.end());
}

State State::goals() const {
  State out;
  for (const auto& p : preds_) {
    if (p.is_goal()) out.preds_.push_back(p);
  }
  return out;
}

State State::sensors() const {
  State out;
  for (const auto& p : preds_) {
    if (p.is_sensor()) out.preds_.push_back(p);
  }
  return out;
}

State State::with(const Predicate& p) const {
  State out = *this;
  out.insert(p);
  return out;
}

State State::without(const Predicate& p) const {
  State out = *this;
  out.erase(p);
  return out;
}

std::string State::text() const {
  std::string out;
  for (const auto& p : preds_) {
    if (!out.empty()) out += ", ";
    out += p.text();
  }
  return out;
}

bool strict_subset(const State& a, const State& b) {
  return a.size() < b.size() && b.includes(a);
}

}  // namespace rulegoal
