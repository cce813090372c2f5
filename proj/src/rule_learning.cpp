#include "rulegoal/rule_learning.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace rulegoal {

void RuleLearningParams::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (base_depth < 1) throw std::invalid_argument("base_depth must be >= 1");
  if (max_sensor_predicates < 1) throw std::invalid_argument("max_sensor_predicates must be >= 1");
  if (!unit(probability_threshold)) throw std::invalid_argument("probability_threshold must lie in [0,1]");
  if (!unit(confidence_threshold)) throw std::invalid_argument("confidence_threshold must lie in [0,1]");
  if (!unit(probability_gain_threshold)) {
    throw std::invalid_argument("probability_gain_threshold must lie in [0,1]");
  }
}

double wilson_lower_bound(const Frequency& f, double confidence) {
  if (!f.defined()) return 0.0;
  const double p = f.value();
  if (confidence <= 0.5) return p;
  const double z = boost::math::quantile(boost::math::normal(), std::min(confidence, 1.0 - 1e-12));
  const double n = static_cast<double>(f.trials);
  const double z2 = z * z;
  const double centre = p + z2 / (2.0 * n);
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return std::max(0.0, (centre - spread) / (1.0 + z2 / n));
}

bool is_probabilistic_law(const EnvironmentRule& r, Evaluator& eval) {
  const Frequency f = eval.count(r);
  if (!f.defined()) return false;
  const auto& preds = r.premise().predicates();
  const std::size_t n = preds.size();
  if (n >= 63) throw std::invalid_argument("premise too large for exhaustive law check");
  // Every non-empty strict subset of the premise.
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
    std::vector<Predicate> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t{1} << i)) sub.push_back(preds[i]);
    }
    const Frequency g = eval.count(EnvironmentRule(State(std::move(sub)), r.action(), r.conclusion()));
    if (g.defined() && !frequency_less(g, f)) return false;
  }
  return true;
}

namespace {

using Premise = std::vector<std::size_t>;  // sorted indices into the universe

/// Law search for one (action, conclusion) pair over a fixed predicate universe.
class LawSearch {
 public:
  LawSearch(Evaluator& eval, const std::vector<Predicate>& universe, const Bits& action,
            const Bits& conclusion, const RuleLearningParams& params)
      : eval_(eval), universe_(universe), action_(action), conclusion_(conclusion), params_(params) {
    for (const auto& p : universe_) truth_.push_back(&eval_.truth(p));
  }

  /// Returns the premises of all laws found.
  std::set<Premise> run() {
    Premise current;
    Bits all = action_;
    enumerate(0, current, all, 0);

    std::set<Premise> laws;
    for (const auto& [premise, f] : memo_) {
      if (f.defined() && is_law(premise)) laws.insert(premise);
    }
    std::set<Premise> refine;
    for (const auto& law : laws) {
      bool maximal = true;
      for (const auto& other : laws) {
        if (other.size() > law.size() && std::includes(other.begin(), other.end(), law.begin(), law.end())) {
          maximal = false;
          break;
        }
      }
      if (maximal) refine.insert(law);
    }
    std::set<Premise> queued = refine;
    while (!refine.empty()) {
      const Premise parent = *refine.begin();
      refine.erase(refine.begin());
      const Frequency parent_f = frequency(parent);
      for (std::size_t i = 0; i < universe_.size(); ++i) {
        if (std::binary_search(parent.begin(), parent.end(), i)) continue;
        Premise child = parent;
        child.insert(std::upper_bound(child.begin(), child.end(), i), i);
        if (sensor_count(child) > params_.max_sensor_predicates) continue;
        const Frequency f = frequency(child);
        if (!f.defined() || !is_law(child)) continue;
        laws.insert(child);
        if (f.value() - parent_f.value() >= params_.probability_gain_threshold && queued.insert(child).second) {
          refine.insert(child);
        }
      }
    }
    return laws;
  }

  Frequency frequency(const Premise& premise) {
    if (auto it = memo_.find(premise); it != memo_.end()) return it->second;
    Bits bits = action_;
    for (auto i : premise) bits &= *truth_[i];
    return memo_[premise] = count(bits);
  }

 private:
  Frequency count(const Bits& premise_bits) const {
    const std::size_t prm = premise_bits.count();
    if (prm == 0) return {0, 0};
    return {(premise_bits & conclusion_).count(), prm};
  }

  std::size_t sensor_count(const Premise& premise) const {
    return static_cast<std::size_t>(
        std::count_if(premise.begin(), premise.end(), [&](auto i) { return universe_[i].is_sensor(); }));
  }

  // Depth-first enumeration of premises up to base_depth. Supersets of a
  // premise that never occurs are skipped: their probability is undefined too.
  void enumerate(std::size_t from, Premise& current, const Bits& bits, std::size_t sensors) {
    for (std::size_t i = from; i < universe_.size(); ++i) {
      const std::size_t s = sensors + (universe_[i].is_sensor() ? 1 : 0);
      if (s > params_.max_sensor_predicates) continue;
      Bits next = bits & *truth_[i];
      current.push_back(i);
      const Frequency f = count(next);
      memo_[current] = f;
      if (f.defined() && current.size() < params_.base_depth) enumerate(i + 1, current, next, s);
      current.pop_back();
    }
  }

  bool is_law(const Premise& premise) {
    const Frequency f = frequency(premise);
    if (!f.defined()) return false;
    const std::size_t n = premise.size();
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << n); ++mask) {
      Premise sub;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::uint64_t{1} << i)) sub.push_back(premise[i]);
      }
      const Frequency g = frequency(sub);
      // A subset premise holds wherever the full premise does.
      if (!g.defined()) throw std::logic_error("subset premise without support");
      if (!frequency_less(g, f)) return false;
    }
    return true;
  }

  Evaluator& eval_;
  const std::vector<Predicate>& universe_;
  const Bits& action_;
  const Bits& conclusion_;
  const RuleLearningParams& params_;
  std::vector<const Bits*> truth_;
  std::map<Premise, Frequency> memo_;
};

}  // namespace

std::vector<Law> learn_rules(Evaluator& eval, const State& conclusion, const RuleLearningParams& params,
                             const std::optional<std::vector<Predicate>>& goal_universe) {
  if (conclusion.empty()) throw std::invalid_argument("learn_rules needs a non-empty conclusion");
  params.validate();
  std::vector<Predicate> universe = eval.observed_sensors();
  if (goal_universe) {
    for (const auto& g : *goal_universe) {
      if (!g.is_goal()) throw std::invalid_argument("goal universe holds non-goal " + g.text());
      universe.push_back(g);
    }
  } else {
    for (const auto& name : eval.goals().registry().names()) universe.push_back(Predicate::goal(name));
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  const Bits reached = eval.reaches(conclusion);
  std::vector<Law> out;
  for (const auto& action : eval.observed_actions()) {
    const Bits& action_bits = eval.truth(Predicate::action(action));
    LawSearch search(eval, universe, action_bits, reached, params);
    for (const auto& premise : search.run()) {
      const Frequency f = search.frequency(premise);
      if (wilson_lower_bound(f, params.confidence_threshold) < params.probability_threshold) continue;
      std::vector<Predicate> preds;
      for (auto i : premise) preds.push_back(universe[i]);
      out.push_back(Law{EnvironmentRule(State(std::move(preds)), action, conclusion), f});
    }
  }
  std::sort(out.begin(), out.end(), [](const Law& a, const Law& b) { return a.rule < b.rule; });
  return out;
}

}  // namespace rulegoal
