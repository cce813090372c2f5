#include "rulegoal/harness/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rulegoal::harness {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> kSchema{
    {"environment", {"width", "height", "k", "items_per_type"}},
    {"agent",
     {"n_round", "m_round", "max_actions", "seed", "subgoal_capacity", "learning_enabled", "window",
      "buffer_capacity", "drop_failed_policies"}},
    {"rules",
     {"base_depth", "probability_threshold", "confidence_threshold", "probability_gain_threshold",
      "max_sensor_predicates"}},
    {"policies", {"max_policy_length", "fitness_gain_threshold"}},
    {"subgoals", {"beta", "max_subgoal_size", "max_accepts_per_call", "counting", "confidence",
                   "law_probability_threshold"}},
    {"experiment", {"runs"}},
};

template <typename T>
void read(const pt::ptree& tree, const std::string& key, T& out) {
  auto v = tree.get_optional<std::string>(key);
  if (!v) return;
  auto parsed = tree.get_optional<T>(key);
  if (!parsed) throw ConfigFileError(fmt::format("bad value '{}' for {}", *v, key));
  out = *parsed;
}

void read_limit(const pt::ptree& tree, const std::string& key, std::optional<std::size_t>& out) {
  auto v = tree.get_optional<std::string>(key);
  if (!v) return;
  if (*v == "unlimited") {
    out.reset();
    return;
  }
  std::size_t n = 0;
  read(tree, key, n);
  out = n;
}

std::string limit_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : "unlimited";
}

}  // namespace

std::size_t default_n_round(int k) { return k == 1 ? 100 : 2000; }

void ExperimentConfig::finalize() {
  if (!n_round_set) agent.n_round = default_n_round(environment.k);
  if (runs == 0) throw ConfigFileError("runs must be positive");
  if (environment.k < 1) throw ConfigFileError("k must be at least 1");
  try {
    agent.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigFileError(e.what());
  }
}

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.finalize();
  return c;
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigFileError(e.what());
  }
  for (const auto& [section, body] : tree) {
    auto known = kSchema.find(section);
    if (known == kSchema.end()) throw ConfigFileError("unknown section [" + section + "]");
    if (!body.data().empty()) throw ConfigFileError("key outside any section: " + section);
    for (const auto& [key, _] : body) {
      if (!known->second.count(key)) throw ConfigFileError("unknown key " + section + "." + key);
    }
  }

  ExperimentConfig c;
  read(tree, "environment.width", c.environment.width);
  read(tree, "environment.height", c.environment.height);
  read(tree, "environment.k", c.environment.k);
  read(tree, "environment.items_per_type", c.environment.items_per_type);

  if (tree.get_optional<std::string>("agent.n_round")) c.n_round_set = true;
  read(tree, "agent.n_round", c.agent.n_round);
  read(tree, "agent.m_round", c.agent.m_round);
  read(tree, "agent.max_actions", c.agent.max_actions);
  read(tree, "agent.seed", c.agent.seed);
  read_limit(tree, "agent.subgoal_capacity", c.agent.subgoal_capacity);
  read(tree, "agent.learning_enabled", c.agent.learning_enabled);
  read(tree, "agent.window", c.agent.window);
  read_limit(tree, "agent.buffer_capacity", c.agent.buffer_capacity);
  read(tree, "agent.drop_failed_policies", c.agent.drop_failed_policies);

  read(tree, "rules.base_depth", c.agent.rules.base_depth);
  read(tree, "rules.probability_threshold", c.agent.rules.probability_threshold);
  read(tree, "rules.confidence_threshold", c.agent.rules.confidence_threshold);
  read(tree, "rules.probability_gain_threshold", c.agent.rules.probability_gain_threshold);
  read(tree, "rules.max_sensor_predicates", c.agent.rules.max_sensor_predicates);

  read(tree, "policies.max_policy_length", c.agent.policies.max_policy_length);
  read(tree, "policies.fitness_gain_threshold", c.agent.policies.fitness_gain_threshold);

  read(tree, "subgoals.beta", c.agent.subgoals.beta);
  read(tree, "subgoals.max_subgoal_size", c.agent.subgoals.max_subgoal_size);
  read(tree, "subgoals.max_accepts_per_call", c.agent.subgoals.max_accepts_per_call);
  read(tree, "subgoals.confidence", c.agent.subgoals.confidence);
  read(tree, "subgoals.law_probability_threshold", c.agent.subgoals.law_probability_threshold);
  if (auto v = tree.get_optional<std::string>("subgoals.counting")) {
    if (*v == "ending_points") {
      c.agent.subgoals.counting = SuccessCounting::ending_points;
    } else if (*v == "successful_starts") {
      c.agent.subgoals.counting = SuccessCounting::successful_starts;
    } else {
      throw ConfigFileError("bad value '" + *v + "' for subgoals.counting");
    }
  }
  read(tree, "experiment.runs", c.runs);
  c.finalize();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigFileError("cannot open config file " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string format_config(const ExperimentConfig& c) {
  const auto& a = c.agent;
  std::string out;
  out += fmt::format("[environment]\nwidth = {}\nheight = {}\nk = {}\nitems_per_type = {}\n\n", c.environment.width,
                     c.environment.height, c.environment.k, c.environment.items_per_type);
  out += fmt::format(
      "[agent]\nn_round = {}\nm_round = {}\nmax_actions = {}\nseed = {}\nsubgoal_capacity = {}\n"
      "learning_enabled = {}\nwindow = {}\nbuffer_capacity = {}\ndrop_failed_policies = {}\n\n",
      a.n_round, a.m_round, a.max_actions, a.seed, limit_text(a.subgoal_capacity), a.learning_enabled, a.window,
      limit_text(a.buffer_capacity), a.drop_failed_policies);
  out += fmt::format(
      "[rules]\nbase_depth = {}\nprobability_threshold = {}\nconfidence_threshold = {}\n"
      "probability_gain_threshold = {}\nmax_sensor_predicates = {}\n\n",
      a.rules.base_depth, a.rules.probability_threshold, a.rules.confidence_threshold,
      a.rules.probability_gain_threshold, a.rules.max_sensor_predicates);
  out += fmt::format("[policies]\nmax_policy_length = {}\nfitness_gain_threshold = {}\n\n",
                     a.policies.max_policy_length, a.policies.fitness_gain_threshold);
  out += fmt::format("[subgoals]\nbeta = {}\nmax_subgoal_size = {}\nmax_accepts_per_call = {}\ncounting = {}\n"
                     "confidence = {}\nlaw_probability_threshold = {}\n\n",
                     a.subgoals.beta, a.subgoals.max_subgoal_size, a.subgoals.max_accepts_per_call,
                     a.subgoals.counting == SuccessCounting::ending_points ? "ending_points" : "successful_starts",
                     a.subgoals.confidence, a.subgoals.law_probability_threshold);
  out += fmt::format("[experiment]\nruns = {}\n", c.runs);
  return out;
}

}  // namespace rulegoal::harness
