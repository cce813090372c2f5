#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rulegoal/environment.hpp"
#include "rulegoal/planning.hpp"
#include "rulegoal/subgoal_discovery.hpp"

namespace rulegoal {

struct AgentConfig {
  /// Actions per learning round N; also the number of initial random actions.
  std::size_t n_round = 100;
  /// Actions per subgoal discovery round M. 0 means M = N. Must be a multiple of N.
  std::size_t m_round = 0;
  std::size_t max_actions = 10000;
  std::uint64_t seed = 1;
  /// Most subgoals ever accepted; unlimited when empty.
  std::optional<std::size_t> subgoal_capacity;
  /// false: act uniformly at random throughout (the baseline agent).
  bool learning_enabled = true;
  std::size_t window = 1000;
  std::optional<std::size_t> buffer_capacity;
  bool trace = false;
  /// A policy whose predicted next state fails to appear is not used again
  /// until the next learning round.
  bool drop_failed_policies = true;

  RuleLearningParams rules;
  PolicyLearningParams policies;
  SubgoalParams subgoals;

  std::size_t discovery_every() const { return m_round == 0 ? n_round : m_round; }
  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

struct WindowStats {
  std::size_t index = 0;
  std::size_t actions_elapsed = 0;
  std::size_t goals_in_window = 0;
  std::size_t cumulative_goals = 0;
  double random_action_fraction = 0.0;
};

struct RoundStats {
  std::size_t actions_elapsed = 0;
  double learning_seconds = 0.0;
  double discovery_seconds = 0.0;
  std::size_t policies = 0;
  std::size_t subgoals_accepted = 0;
};

struct SubgoalEvent {
  std::size_t actions_elapsed = 0;
  AcceptedSubgoal subgoal;
};

struct RunStats {
  std::size_t actions = 0;
  std::size_t primary_goals = 0;
  std::size_t random_actions = 0;
  std::size_t planned_actions = 0;
  std::size_t dropped_policies = 0;
  std::vector<WindowStats> windows;
  std::vector<RoundStats> rounds;
  std::vector<SubgoalEvent> subgoal_log;
};

struct EpisodeResult {
  RunStats stats;
  ReplayBuffer buffer;
  GoalHierarchy goals;
  PolicyStore policies;
  /// Laws computed in the last learning round, over every conclusion visited.
  std::vector<Law> laws;
  /// One line per action when tracing is on.
  std::vector<std::string> trace;
};

/// One seeded episode: N random actions, then alternating learning rounds and
/// N planned actions until max_actions.
EpisodeResult run_episode(const env::Config& env_config, const AgentConfig& config);

/// Policies for every goal, most subordinate first, over one buffer snapshot.
/// Laws computed on the way are appended to `laws` when given.
PolicyStore learn_all_policies(const ReplayBuffer& buffer, const GoalHierarchy& goals, const AgentConfig& config,
                               std::vector<Law>* laws = nullptr);

struct ExperimentRow {
  std::size_t window_index = 0;
  std::size_t actions_elapsed = 0;
  double mean_goals_in_window = 0.0;
  double mean_cumulative_goals = 0.0;
  double mean_random_action_fraction = 0.0;
  std::vector<std::size_t> goals_per_run;
};

struct ExperimentResult {
  std::vector<RunStats> runs;
  std::vector<ExperimentRow> rows;
};

/// Runs seeds seed, seed+1, ..., seed+runs-1 and averages their windows.
/// `on_run` is called after each episode.
ExperimentResult run_experiment(const env::Config& env_config, const AgentConfig& config, std::size_t runs,
                                const std::function<void(std::size_t, const EpisodeResult&)>& on_run = {});

}  // namespace rulegoal
