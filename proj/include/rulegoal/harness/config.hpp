#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "rulegoal/orchestrator.hpp"

namespace rulegoal::harness {

class ConfigFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a run or experiment needs.
///
/// File format: INI sections with typed keys.
///
///   [environment]  width height k items_per_type
///   [agent]        n_round m_round max_actions seed subgoal_capacity
///                  learning_enabled window buffer_capacity
///                  drop_failed_policies
///   [rules]        base_depth probability_threshold confidence_threshold
///                  probability_gain_threshold max_sensor_predicates
///   [policies]     max_policy_length fitness_gain_threshold
///   [subgoals]     beta max_subgoal_size max_accepts_per_call counting
///                  confidence law_probability_threshold
///   [experiment]   runs
///
/// subgoal_capacity and buffer_capacity accept "unlimited". counting is
/// "ending_points" or "successful_starts". An unset n_round defaults to 100
/// for k = 1 and 2000 otherwise.
struct ExperimentConfig {
  env::Config environment;
  AgentConfig agent;
  std::size_t runs = 10;
  bool n_round_set = false;

  /// Fills dependent defaults and validates. Throws ConfigFileError.
  void finalize();
};

/// Default n_round for k item types.
std::size_t default_n_round(int k);

ExperimentConfig default_config();
ExperimentConfig load_config(const std::filesystem::path& path);
ExperimentConfig parse_config(const std::string& text);
/// Round-trips through parse_config.
std::string format_config(const ExperimentConfig& config);

}  // namespace rulegoal::harness
