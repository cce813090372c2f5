// Command line front end: run, experiment, mine, validate-config.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <spdlog/spdlog.h>

#include "rulegoal/core/notation.hpp"
#include "rulegoal/harness/buffer_io.hpp"
#include "rulegoal/harness/config.hpp"
#include "rulegoal/harness/dumps.hpp"
#include "rulegoal/harness/logging.hpp"

namespace fs = std::filesystem;
using namespace rulegoal;

namespace {

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> max_actions;
  std::optional<std::string> subgoal_capacity;
  std::string out_dir = ".";
  bool dump_rules = false;
  bool dump_policies = false;
  bool trace = false;
  bool dump_buffer = false;
  bool random_baseline = false;
  std::string buffer;
  std::string conclusion;
};

harness::ExperimentConfig resolve(const Options& o) {
  auto c = o.config.empty() ? harness::default_config() : harness::load_config(o.config);
  if (o.k) c.environment.k = *o.k;
  if (o.seed) c.agent.seed = *o.seed;
  if (o.runs) c.runs = *o.runs;
  if (o.max_actions) c.agent.max_actions = *o.max_actions;
  if (o.subgoal_capacity) {
    if (*o.subgoal_capacity == "unlimited") {
      c.agent.subgoal_capacity.reset();
    } else {
      try {
        c.agent.subgoal_capacity = std::stoul(*o.subgoal_capacity);
      } catch (const std::exception&) {
        throw harness::ConfigFileError("bad --subgoal-capacity " + *o.subgoal_capacity);
      }
    }
  }
  if (o.random_baseline) c.agent.learning_enabled = false;
  c.agent.trace = o.trace;
  c.finalize();
  return c;
}

std::ofstream open_out(const Options& o, const std::string& name) {
  fs::create_directories(o.out_dir);
  std::ofstream out(fs::path(o.out_dir) / name);
  if (!out) throw std::runtime_error("cannot write " + (fs::path(o.out_dir) / name).string());
  return out;
}

void write_episode(const Options& o, const EpisodeResult& r, const std::string& prefix) {
  auto csv = open_out(o, prefix + "run.csv");
  harness::write_run_csv(csv, r.stats);
  auto log = open_out(o, prefix + "subgoals.log");
  harness::write_subgoal_log(log, r.stats.subgoal_log);
  if (o.dump_rules) {
    auto out = open_out(o, prefix + "laws.txt");
    harness::write_laws(out, r.laws);
  }
  if (o.dump_policies) {
    auto out = open_out(o, prefix + "policies.txt");
    harness::write_policies(out, r.policies);
  }
  if (o.dump_buffer) {
    auto out = open_out(o, prefix + "buffer.txt");
    harness::write_buffer(out, r.buffer, r.goals);
  }
  if (o.trace) {
    auto out = open_out(o, prefix + "trace.txt");
    for (const auto& line : r.trace) out << line << '\n';
  }
}

int cmd_run(const Options& o) {
  const auto c = resolve(o);
  const auto r = run_episode(c.environment, c.agent);
  write_episode(o, r, "");
  std::cout << "actions " << r.stats.actions << " primary goals " << r.stats.primary_goals << " subgoals "
            << r.goals.subgoal_count() << '\n';
  return 0;
}

int cmd_experiment(const Options& o) {
  const auto c = resolve(o);
  const auto result = run_experiment(c.environment, c.agent, c.runs, [&](std::size_t i, const EpisodeResult& r) {
    spdlog::info("run {} done: {} primary goals, {} subgoals", i, r.stats.primary_goals, r.goals.subgoal_count());
    if (o.dump_rules || o.dump_policies || o.trace || o.dump_buffer) write_episode(o, r, "run" + std::to_string(i) + "_");
  });
  auto csv = open_out(o, "experiment.csv");
  harness::write_experiment_csv(csv, result);
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    std::cout << "run " << i << " primary goals " << result.runs[i].primary_goals << '\n';
  }
  return 0;
}

int cmd_mine(const Options& o) {
  const auto c = resolve(o);
  auto rec = harness::load_buffer(o.buffer);
  if (!o.conclusion.empty()) {
    Evaluator eval(rec.buffer, rec.goals);
    auto laws = learn_rules(eval, parse_state(o.conclusion), c.agent.rules);
    auto out = open_out(o, "laws.txt");
    harness::write_laws(out, laws);
    std::cout << laws.size() << " laws\n";
    return 0;
  }
  std::vector<Law> laws;
  PolicyStore store = learn_all_policies(rec.buffer, rec.goals, c.agent, &laws);
  std::vector<SubgoalEvent> log;
  for (const auto& g : rec.goals.subordinate_order()) {
    auto report = discover(rec.buffer, rec.goals, g, c.agent.rules, c.agent.policies, c.agent.subgoals);
    for (auto& s : report.accepted) log.push_back({rec.buffer.size(), std::move(s)});
  }
  if (!log.empty()) store = learn_all_policies(rec.buffer, rec.goals, c.agent, &laws);
  auto law_out = open_out(o, "laws.txt");
  harness::write_laws(law_out, laws);
  auto pol_out = open_out(o, "policies.txt");
  harness::write_policies(pol_out, store);
  auto log_out = open_out(o, "subgoals.log");
  harness::write_subgoal_log(log_out, log);
  std::cout << laws.size() << " laws, " << store.total() << " policies, " << log.size() << " subgoals\n";
  return 0;
}

int cmd_validate(const Options& o) {
  const auto c = resolve(o);
  std::cout << harness::format_config(c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  harness::init_logging();
  CLI::App app{"Rule-based hierarchical agent with subgoal discovery"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "INI configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--k", o.k, "Number of item types");
    sub->add_option("--max-actions", o.max_actions, "Action budget per episode");
    sub->add_option("--subgoal-capacity", o.subgoal_capacity, "Most subgoals accepted, or 'unlimited'");
    sub->add_option("--out-dir", o.out_dir, "Directory for emitted files");
    sub->add_flag("--dump-rules", o.dump_rules, "Write learned laws");
    sub->add_flag("--dump-policies", o.dump_policies, "Write learned policies");
    sub->add_flag("--trace", o.trace, "Write one trace line per action");
    sub->add_flag("--dump-buffer", o.dump_buffer, "Write the final replay buffer");
  };

  auto* run = app.add_subcommand("run", "Run one episode");
  common(run);
  run->add_flag("--random", o.random_baseline, "Act uniformly at random, no learning");
  auto* exp = app.add_subcommand("experiment", "Run several seeded episodes and average them");
  common(exp);
  exp->add_option("--runs", o.runs, "Number of runs");
  exp->add_flag("--random", o.random_baseline, "Act uniformly at random, no learning");
  auto* mine = app.add_subcommand("mine", "Learn laws, policies and subgoals from a recorded buffer");
  common(mine);
  mine->add_option("--buffer", o.buffer, "Recorded buffer file")->required()->check(CLI::ExistingFile);
  mine->add_option("--conclusion", o.conclusion, "Only mine laws for this conclusion state");
  auto* validate = app.add_subcommand("validate-config", "Check a configuration and print it resolved");
  common(validate);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(o);
    if (*exp) return cmd_experiment(o);
    if (*mine) return cmd_mine(o);
    if (*validate) return cmd_validate(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
