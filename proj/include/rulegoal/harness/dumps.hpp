#pragma once

#include <iosfwd>
#include <vector>

#include "rulegoal/orchestrator.hpp"

namespace rulegoal::harness {

/// One law line per law, in rule order.
void write_laws(std::ostream& out, const std::vector<Law>& laws);
/// Policies grouped under `# goal <name>` headers, goals in name order.
void write_policies(std::ostream& out, const PolicyStore& store);
/// `name<TAB>interpretation<TAB>parent<TAB>gain` per accepted subgoal, with the action count first.
void write_subgoal_log(std::ostream& out, const std::vector<SubgoalEvent>& log);

/// window_index, actions_elapsed, goals_in_window, cumulative_goals, random_action_fraction
void write_run_csv(std::ostream& out, const RunStats& stats);
/// window_index, mean_goals_in_window, actions_elapsed, mean_cumulative_goals,
/// mean_random_action_fraction, then goals_in_window per run.
void write_experiment_csv(std::ostream& out, const ExperimentResult& result);

}  // namespace rulegoal::harness
