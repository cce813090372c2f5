#include "rulegoal/core/evaluator.hpp"

#include <algorithm>
#include <stdexcept>

namespace rulegoal {

bool frequency_less(const Frequency& a, const Frequency& b) {
  // a.hits / a.trials < b.hits / b.trials without rounding.
  return static_cast<unsigned __int128>(a.hits) * b.trials <
         static_cast<unsigned __int128>(b.hits) * a.trials;
}

Evaluator::Evaluator(const ReplayBuffer& buffer, const GoalHierarchy& goals)
    : buffer_(&buffer), goals_(&goals), n_(buffer.size()), segment_starts_(n_), empty_(n_) {
  for (std::size_t i = 0; i < n_; ++i) {
    const Transition& t = buffer[i];
    if (buffer.segment_start(i)) segment_starts_.set(i);
    for (const auto& p : t.pre) {
      auto [it, _] = pre_.try_emplace(p, n_);
      it->second.set(i);
    }
    for (const auto& p : t.post) {
      auto [it, _] = post_.try_emplace(p, n_);
      it->second.set(i);
    }
    auto [it, _] = actions_.try_emplace(t.action, n_);
    it->second.set(i);
  }
}

const Bits& Evaluator::truth(const Predicate& p) {
  switch (p.kind()) {
    case PredicateKind::sensor: {
      auto it = pre_.find(p);
      return it == pre_.end() ? empty_ : it->second;
    }
    case PredicateKind::action: {
      auto it = actions_.find(p.name());
      return it == actions_.end() ? empty_ : it->second;
    }
    case PredicateKind::goal:
      return goal_bits(p.name()).before;
  }
  return empty_;
}

const Bits& Evaluator::outcome(const Predicate& p) {
  switch (p.kind()) {
    case PredicateKind::sensor: {
      auto it = post_.find(p);
      return it == post_.end() ? empty_ : it->second;
    }
    case PredicateKind::goal:
      return goal_bits(p.name()).after;
    case PredicateKind::action:
      break;
  }
  throw std::invalid_argument("actions have no outcome: " + p.text());
}

Bits Evaluator::achieved(const State& s) {
  Bits out(n_);
  out.set();
  for (const auto& p : s) {
    if (!p.is_sensor()) throw std::invalid_argument("achievement is defined for sensor states");
    out &= outcome(p);
  }
  return out;
}

Bits Evaluator::holds(const State& s) {
  Bits out(n_);
  out.set();
  for (const auto& p : s) out &= truth(p);
  return out;
}

Bits Evaluator::holds(const State& s, const std::string& action) {
  Bits out = holds(s);
  auto it = actions_.find(action);
  if (it == actions_.end()) return empty_;
  out &= it->second;
  return out;
}

Bits Evaluator::reaches(const State& s) {
  Bits out(n_);
  out.set();
  for (const auto& p : s) out &= outcome(p);
  return out;
}

Frequency Evaluator::count(const EnvironmentRule& r) {
  if (auto it = counts_.find(r); it != counts_.end()) return it->second;
  Bits premise = holds(r.premise(), r.action());
  const std::size_t prm = premise.count();
  Frequency f{0, 0};
  if (prm > 0) {
    premise &= reaches(r.conclusion());
    f = {premise.count(), prm};
  }
  counts_.emplace(r, f);
  return f;
}

const Bits& Evaluator::chain_mask(std::size_t length) {
  if (length == 0) throw std::invalid_argument("chain length must be positive");
  if (masks_.size() <= length) masks_.resize(length + 1);
  auto& slot = masks_[length];
  if (!slot) {
    Bits mask(n_);
    if (n_ >= length) {
      for (std::size_t i = 0; i + length <= n_; ++i) mask.set(i);
      for (std::size_t j = 1; j < length; ++j) mask &= ~(segment_starts_ >> j);
    }
    slot = std::move(mask);
  }
  return *slot;
}

Bits Evaluator::chain_starts(std::span<const Bits> step_bits) {
  Bits acc = chain_mask(step_bits.size());
  for (std::size_t i = 0; i < step_bits.size(); ++i) {
    acc &= i == 0 ? step_bits[0] : (step_bits[i] >> i);
  }
  return acc;
}

std::vector<Bits> Evaluator::step_bits(const Policy& p) {
  std::vector<Bits> out;
  out.reserve(p.length());
  for (const auto& step : p.steps()) out.push_back(holds(step.state, step.action));
  return out;
}

std::pair<Bits, Bits> Evaluator::chain_points(const Policy& p) {
  auto steps = step_bits(p);
  Bits starts = chain_starts(steps);
  Bits success = starts & (reaches(p.target()) >> (p.length() - 1));
  return {std::move(starts), std::move(success)};
}

ChainCounts Evaluator::chain_counts(const Policy& p) {
  auto [starts, success] = chain_points(p);
  // A start determines its chain uniquely, so successful starts and ending
  // points are in bijection.
  return {starts.count(), success.count()};
}

std::vector<Predicate> Evaluator::observed_sensors() const {
  std::vector<Predicate> out;
  out.reserve(pre_.size());
  for (const auto& [p, _] : pre_) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Evaluator::observed_actions() const {
  std::vector<std::string> out;
  for (const auto& [a, _] : actions_) out.push_back(a);
  return out;
}

void Evaluator::define_trial_goal(const std::string& name, const State& interpretation,
                                  const std::string& parent) {
  if (goals_->contains(name)) throw std::invalid_argument("trial goal shadows registered goal " + name);
  auto it = trial_resets_.find(parent);
  if (it == trial_resets_.end()) {
    Bits reset = achieved(goals_->interpretation(parent));
    for (const auto& up : goals_->strictly_above(parent)) reset |= achieved(goals_->interpretation(up));
    it = trial_resets_.emplace(parent, std::move(reset)).first;
  }
  // Rule counts may mention the previous trial goal under the same name.
  counts_.clear();
  trial_goals_[name] = compute_goal_bits(interpretation, it->second);
}

void Evaluator::clear_trial_goals() {
  trial_goals_.clear();
  counts_.clear();
}

Bits Evaluator::goal_truth(const State& pi, std::span<const State> resetting, bool after) {
  auto bits = compute_goal_bits(pi, resetting);
  return after ? std::move(bits.after) : std::move(bits.before);
}

const Evaluator::GoalBits& Evaluator::goal_bits(const std::string& name) {
  if (auto it = trial_goals_.find(name); it != trial_goals_.end()) return it->second;
  if (auto it = goal_cache_.find(name); it != goal_cache_.end()) return it->second;
  if (!goals_->contains(name)) throw std::out_of_range("goal predicate not in registry: " + name);
  std::vector<State> resetting;
  for (const auto& up : goals_->strictly_above(name)) resetting.push_back(goals_->interpretation(up));
  return goal_cache_[name] = compute_goal_bits(goals_->interpretation(name), resetting);
}

Evaluator::GoalBits Evaluator::compute_goal_bits(const State& pi, std::span<const State> resetting) {
  Bits reset(n_);
  for (const auto& s : resetting) reset |= achieved(s);
  return compute_goal_bits(pi, reset);
}

Evaluator::GoalBits Evaluator::compute_goal_bits(const State& pi, const Bits& reset) {
  const Bits reached = achieved(pi);
  GoalBits out{Bits(n_), Bits(n_)};
  bool flag = false;
  for (std::size_t i = 0; i < n_; ++i) {
    if (segment_starts_.test(i)) flag = false;
    out.before[i] = flag;
    flag = (flag || reached.test(i)) && !reset.test(i);
    out.after[i] = flag;
  }
  return out;
}

}  // namespace rulegoal
