#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "rulegoal/core/goals.hpp"
#include "rulegoal/core/replay_buffer.hpp"
#include "rulegoal/core/rule.hpp"

namespace rulegoal {

/// One bit per buffer tuple.
using Bits = boost::dynamic_bitset<std::uint64_t>;

/// A frequency `hits / trials`; undefined when there were no trials.
struct Frequency {
  std::size_t hits = 0;
  std::size_t trials = 0;

  bool defined() const { return trials > 0; }
  double value() const { return static_cast<double>(hits) / static_cast<double>(trials); }
  std::optional<double> maybe() const {
    return defined() ? std::optional<double>(value()) : std::nullopt;
  }
};

/// Exact comparison a < b of two defined frequencies.
bool frequency_less(const Frequency& a, const Frequency& b);

/// Starting and ending points of a policy in a buffer.
struct ChainCounts {
  std::size_t starting = 0;
  std::size_t ending = 0;
  Frequency frequency() const { return {ending, starting}; }
};

/// Truth of predicates over a frozen (buffer, goal hierarchy) snapshot, one
/// bitset per predicate, with caching.
///
/// A sensor or action predicate is true on a tuple when it occurs in S_pre or
/// is the tuple's action. A goal G is true on tuple τ when π(G) was achieved
/// (π(G) ⊆ S_post) on some earlier tuple τ↑ of the same segment and no goal
/// strictly above G was achieved on any tuple from τ↑ up to, but excluding, τ.
/// "Outcome" bits describe what holds once a tuple has been executed: a sensor
/// is in S_post, a goal holds on the (possibly virtual) next tuple.
///
/// The snapshot must outlive the evaluator and must not change underneath it.
class Evaluator {
 public:
  Evaluator(const ReplayBuffer& buffer, const GoalHierarchy& goals);

  std::size_t size() const { return n_; }
  const ReplayBuffer& buffer() const { return *buffer_; }
  const GoalHierarchy& goals() const { return *goals_; }

  /// Truth of `p` on each tuple. Throws std::out_of_range for unknown goals.
  const Bits& truth(const Predicate& p);
  /// Outcome of `p` after each tuple (sensor ∈ S_post, or goal holds afterwards).
  const Bits& outcome(const Predicate& p);
  /// Tuples on which the sensor state `s` is contained in S_post.
  Bits achieved(const State& s);

  /// τ ⊨ s.
  Bits holds(const State& s);
  /// τ ⊨ s ∪ {action}.
  Bits holds(const State& s, const std::string& action);
  /// Tuples whose S_post satisfies `s` as a rule conclusion.
  Bits reaches(const State& s);

  /// prm / prmconc counts of `r`.
  Frequency count(const EnvironmentRule& r);

  /// Valid first positions of `length` consecutive tuples within one segment.
  const Bits& chain_mask(std::size_t length);
  /// Starting points of a chain whose i-th tuple satisfies `step_bits[i]`.
  Bits chain_starts(std::span<const Bits> step_bits);
  /// Per-step bits τ ⊨ S_i ∪ {A_i} of a policy.
  std::vector<Bits> step_bits(const Policy& p);
  /// Starting points of `p`, and the subset whose chain ends in the target.
  std::pair<Bits, Bits> chain_points(const Policy& p);
  ChainCounts chain_counts(const Policy& p);

  /// Sensor predicates occurring in some S_pre, sorted.
  std::vector<Predicate> observed_sensors() const;
  /// Actions occurring in the buffer, sorted.
  std::vector<std::string> observed_actions() const;

  /// Makes a goal outside the hierarchy evaluable, as if it were placed
  /// directly below `parent` with interpretation `interpretation`.
  void define_trial_goal(const std::string& name, const State& interpretation,
                         const std::string& parent);
  void clear_trial_goals();

  /// Truth bits of a goal with interpretation `pi` reset by the listed
  /// interpretations. `after` selects the outcome variant.
  Bits goal_truth(const State& pi, std::span<const State> resetting, bool after);

 private:
  struct GoalBits {
    Bits before;
    Bits after;
  };
  const GoalBits& goal_bits(const std::string& name);
  GoalBits compute_goal_bits(const State& pi, std::span<const State> resetting);
  GoalBits compute_goal_bits(const State& pi, const Bits& reset);

  const ReplayBuffer* buffer_;
  const GoalHierarchy* goals_;
  std::size_t n_;
  Bits segment_starts_;
  Bits empty_;
  std::unordered_map<Predicate, Bits> pre_;
  std::unordered_map<Predicate, Bits> post_;
  std::map<std::string, Bits> actions_;
  std::map<std::string, GoalBits> goal_cache_;
  std::map<std::string, GoalBits> trial_goals_;
  std::map<std::string, Bits> trial_resets_;
  std::map<EnvironmentRule, Frequency> counts_;
  std::vector<std::optional<Bits>> masks_;
};

}  // namespace rulegoal
