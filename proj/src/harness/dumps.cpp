#include "rulegoal/harness/dumps.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <ostream>

#include "rulegoal/core/notation.hpp"

namespace rulegoal::harness {

void write_laws(std::ostream& out, const std::vector<Law>& laws) {
  for (const auto& l : laws) out << format_law(l.rule, l.frequency) << '\n';
}

void write_policies(std::ostream& out, const PolicyStore& store) {
  for (const auto& [goal, policies] : store.all()) {
    out << "# goal " << goal << '\n';
    for (const auto& p : policies) out << format_policy(p.policy, p.fitness) << '\n';
  }
}

void write_subgoal_log(std::ostream& out, const std::vector<SubgoalEvent>& log) {
  for (const auto& e : log) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{:.4f}\n", e.actions_elapsed, e.subgoal.name, e.subgoal.interpretation.text(),
               e.subgoal.parent, e.subgoal.gain);
  }
}

void write_run_csv(std::ostream& out, const RunStats& stats) {
  out << "window_index,actions_elapsed,goals_in_window,cumulative_goals,random_action_fraction\n";
  for (const auto& w : stats.windows) {
    fmt::print(out, "{},{},{},{},{:.4f}\n", w.index, w.actions_elapsed, w.goals_in_window, w.cumulative_goals,
               w.random_action_fraction);
  }
}

void write_experiment_csv(std::ostream& out, const ExperimentResult& result) {
  out << "window_index,mean_goals_in_window,actions_elapsed,mean_cumulative_goals,mean_random_action_fraction";
  for (std::size_t i = 0; i < result.runs.size(); ++i) out << ",goals_run" << i;
  out << '\n';
  for (const auto& r : result.rows) {
    fmt::print(out, "{},{:.4f},{},{:.4f},{:.4f}", r.window_index, r.mean_goals_in_window, r.actions_elapsed,
               r.mean_cumulative_goals, r.mean_random_action_fraction);
    for (auto g : r.goals_per_run) out << ',' << g;
    out << '\n';
  }
}

}  // namespace rulegoal::harness
