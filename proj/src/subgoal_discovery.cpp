#include "rulegoal/subgoal_discovery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <spdlog/spdlog.h>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace rulegoal {

namespace {

constexpr const char* kTrialGoal = "G__trial";

struct ChainBits {
  Bits starts;
  Bits successes;  // at the starting tuple
  std::size_t length = 1;
};

Frequency aggregate_counts(const std::vector<ChainBits>& chains, std::size_t n, SuccessCounting counting) {
  Bits starts(n), hits(n);
  for (const auto& c : chains) {
    starts |= c.starts;
    hits |= counting == SuccessCounting::ending_points ? (c.successes << (c.length - 1)) : c.successes;
  }
  return {hits.count(), starts.count()};
}

double aggregate(const std::vector<ChainBits>& chains, std::size_t n, SuccessCounting counting) {
  const Frequency f = aggregate_counts(chains, n, counting);
  return f.defined() ? f.value() : 0.0;
}

struct Candidate {
  State state;
  double gain = 0.0;
  std::size_t support = 0;
  std::size_t hits = 0;
  double surprisal = 0.0;
};

// -log of how often each sensor reading appears in S_pre, summed over the
// candidate. Readings present almost everywhere (Back(empty)) add little.
class Surprisal {
 public:
  explicit Surprisal(const ReplayBuffer& buffer) : n_(static_cast<double>(buffer.size())) {
    for (const auto& t : buffer.tuples()) {
      for (const auto& p : t.pre) ++seen_[p];
    }
  }

  double operator()(const State& s) const {
    double out = 0.0;
    for (const auto& p : s) {
      auto it = seen_.find(p);
      out -= std::log(it == seen_.end() ? 1.0 / n_ : static_cast<double>(it->second) / n_);
    }
    return out;
  }

 private:
  double n_;
  std::map<Predicate, std::size_t> seen_;
};

// Sensor subsets of size 1..max_size drawn from each distinct S_pre.
std::vector<State> candidate_states(const ReplayBuffer& buffer, std::size_t max_size) {
  std::map<Predicate, std::uint32_t> index;
  std::vector<Predicate> universe;
  std::set<std::vector<std::uint32_t>> distinct;
  for (const auto& t : buffer.tuples()) {
    std::vector<std::uint32_t> ids;
    for (const auto& p : t.pre) {
      auto [it, fresh] = index.try_emplace(p, static_cast<std::uint32_t>(universe.size()));
      if (fresh) universe.push_back(p);
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    distinct.insert(std::move(ids));
  }
  std::set<std::vector<std::uint32_t>> subsets;
  std::vector<std::uint32_t> pick;
  auto walk = [&](auto&& self, const std::vector<std::uint32_t>& ids, std::size_t from) -> void {
    for (std::size_t i = from; i < ids.size(); ++i) {
      pick.push_back(ids[i]);
      subsets.insert(pick);
      if (pick.size() < max_size) self(self, ids, i + 1);
      pick.pop_back();
    }
  };
  for (const auto& ids : distinct) walk(walk, ids, 0);

  std::vector<State> out;
  out.reserve(subsets.size());
  for (const auto& ids : subsets) {
    std::vector<Predicate> preds;
    for (auto i : ids) preds.push_back(universe[i]);
    out.emplace_back(std::move(preds));
  }
  std::sort(out.begin(), out.end(), [](const State& a, const State& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace

void SubgoalParams::validate() const {
  if (beta < 0.0 || beta > 1.0) throw std::invalid_argument("beta must lie in [0,1]");
  if (max_subgoal_size < 1) throw std::invalid_argument("max_subgoal_size must be >= 1");
  if (confidence < 0.0 || confidence > 1.0) throw std::invalid_argument("confidence must lie in [0,1]");
  if (law_probability_threshold < 0.0 || law_probability_threshold > 1.0) {
    throw std::invalid_argument("law_probability_threshold must lie in [0,1]");
  }
}

Frequency avg_fq_counts(const std::vector<Policy>& policies, Evaluator& eval, SuccessCounting counting) {
  std::vector<ChainBits> chains;
  chains.reserve(policies.size());
  for (const auto& p : policies) {
    auto [starts, successes] = eval.chain_points(p);
    chains.push_back({std::move(starts), std::move(successes), p.length()});
  }
  return aggregate_counts(chains, eval.size(), counting);
}

double avg_fq_fitness(const std::vector<Policy>& policies, Evaluator& eval, SuccessCounting counting) {
  const Frequency f = avg_fq_counts(policies, eval, counting);
  return f.defined() ? f.value() : 0.0;
}

Policy with_subgoal(const Policy& p, const Predicate& goal) {
  if (!goal.is_goal()) throw std::invalid_argument("with_subgoal needs a goal predicate");
  std::vector<PolicyStep> steps = p.steps();
  for (auto& s : steps) s.state = s.state.with(goal);
  return Policy(std::move(steps), p.target());
}

DiscoveryReport discover(const ReplayBuffer& buffer, GoalHierarchy& goals, const std::string& goal,
                         const RuleLearningParams& rule_params, const PolicyLearningParams& policy_params,
                         const SubgoalParams& params, std::size_t capacity) {
  params.validate();
  DiscoveryReport report;
  if (capacity == 0 || buffer.empty()) return report;

  const State target = goals.interpretation(goal);
  Evaluator eval(buffer, goals);
  PolicyLearningParams fq_params = policy_params;
  fq_params.fitness_kind = FitnessKind::frequency;
  RuleLearningParams mining = rule_params;
  mining.probability_threshold = params.law_probability_threshold;
  const auto pol = learn_policies(eval, target, mining, fq_params, subordinate_goal_universe(goals, goal));

  // BESTPOL: for each tuple achieving the goal, the policies ending there
  // with the highest frequency fitness.
  std::vector<std::vector<Bits>> steps;
  std::vector<ChainCounts> counts;
  std::vector<ChainBits> chains;
  for (const auto& sp : pol) {
    steps.push_back(eval.step_bits(sp.policy));
    Bits starts = eval.chain_starts(steps.back());
    Bits successes = starts & (eval.reaches(sp.policy.target()) >> (sp.policy.length() - 1));
    counts.push_back({starts.count(), successes.count()});
    chains.push_back({std::move(starts), std::move(successes), sp.policy.length()});
  }
  struct Best {
    Frequency fq;
    std::vector<std::size_t> members;
  };
  std::unordered_map<std::size_t, Best> best;
  for (std::size_t j = 0; j < pol.size(); ++j) {
    const Frequency fq = counts[j].frequency();
    const Bits ends = chains[j].successes << (chains[j].length - 1);
    for (auto t = ends.find_first(); t != Bits::npos; t = ends.find_next(t)) {
      auto [it, fresh] = best.try_emplace(t, Best{fq, {j}});
      if (fresh) continue;
      if (frequency_less(it->second.fq, fq)) {
        it->second = Best{fq, {j}};
      } else if (!frequency_less(fq, it->second.fq)) {
        it->second.members.push_back(j);
      }
    }
  }
  std::set<std::size_t> chosen;
  for (const auto& [_, b] : best) chosen.insert(b.members.begin(), b.members.end());
  report.best_policies = chosen.size();
  if (chosen.empty()) {
    spdlog::debug("discover {}: no best policies among {} learned", goal, pol.size());
    return report;
  }

  std::vector<ChainBits> best_chains;
  for (auto j : chosen) best_chains.push_back(chains[j]);
  report.baseline = aggregate(best_chains, eval.size(), params.counting);

  std::vector<Candidate> passed;
  const Surprisal surprisal(buffer);
  const Predicate trial = Predicate::goal(kTrialGoal);
  for (const auto& s : candidate_states(buffer, params.max_subgoal_size)) {
    if (goals.has_subgoal_with(goal, s)) continue;
    ++report.candidates;
    eval.define_trial_goal(kTrialGoal, s, goal);
    const Bits& truth = eval.truth(trial);
    if (truth.none()) continue;
    std::vector<ChainBits> updated;
    updated.reserve(chosen.size());
    for (auto j : chosen) {
      std::vector<Bits> with_goal = steps[j];
      for (auto& b : with_goal) b &= truth;
      Bits starts = eval.chain_starts(with_goal);
      Bits successes = starts & chains[j].successes;
      updated.push_back({std::move(starts), std::move(successes), chains[j].length});
    }
    const Frequency fq = aggregate_counts(updated, eval.size(), params.counting);
    const double gain = wilson_lower_bound(fq, params.confidence) - report.baseline;
    if (gain < params.beta) continue;
    passed.push_back({s, gain, fq.trials, fq.hits, surprisal(s)});
  }
  eval.clear_trial_goals();

  std::stable_sort(passed.begin(), passed.end(), [](const Candidate& a, const Candidate& b) {
    // A subgoal that explains more of the observed successes wins over a
    // narrower one that happens to avoid every failure in a small sample.
    if (a.hits != b.hits) return a.hits > b.hits;
    if (a.gain != b.gain) return a.gain > b.gain;
    // Equally useful candidates often describe the same event; keep the
    // description built from the rarest readings.
    return a.surprisal > b.surprisal;
  });
  if (spdlog::should_log(spdlog::level::debug)) {
    spdlog::debug("discover {}: {} best policies, baseline {:.4f}, {} candidates, {} passed", goal,
                  report.best_policies, report.baseline, report.candidates, passed.size());
    for (std::size_t i = 0; i < passed.size() && i < 5; ++i) {
      spdlog::debug("  {} gain {:.4f} hits {}/{}", passed[i].state.text(), passed[i].gain, passed[i].hits,
                    passed[i].support);
    }
  }
  std::size_t limit = std::min(capacity, params.max_accepts_per_call == 0 ? passed.size()
                                                                          : params.max_accepts_per_call);
  for (const auto& c : passed) {
    if (report.accepted.size() >= limit) break;
    const std::string name = goals.add_subgoal(c.state, goal);
    report.accepted.push_back({name, c.state, goal, c.gain});
  }
  return report;
}

}  // namespace rulegoal
