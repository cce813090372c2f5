#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rulegoal/core/notation.hpp"
#include "rulegoal/core/semantics.hpp"
#include "rulegoal/environment.hpp"
#include "rulegoal/harness/buffer_io.hpp"
#include "rulegoal/harness/config.hpp"
#include "rulegoal/harness/logging.hpp"
#include "rulegoal/orchestrator.hpp"

namespace py = pybind11;
using namespace rulegoal;

namespace {

harness::ExperimentConfig config_from(const std::string& text) {
  return text.empty() ? harness::default_config() : harness::parse_config(text);
}

std::vector<std::string> texts(const State& s) {
  std::vector<std::string> out;
  for (const auto& p : s) out.push_back(p.text());
  return out;
}

harness::RecordedBuffer read_text(const std::string& text) {
  std::istringstream in(text);
  return harness::read_buffer(in);
}

py::dict episode_dict(const EpisodeResult& r) {
  py::dict d;
  d["actions"] = r.stats.actions;
  d["primary_goals"] = r.stats.primary_goals;
  d["random_actions"] = r.stats.random_actions;
  d["planned_actions"] = r.stats.planned_actions;
  py::list windows;
  for (const auto& w : r.stats.windows) {
    windows.append(py::make_tuple(w.actions_elapsed, w.goals_in_window, w.cumulative_goals, w.random_action_fraction));
  }
  d["windows"] = windows;
  py::list subgoals;
  for (const auto& e : r.stats.subgoal_log) {
    subgoals.append(py::make_tuple(e.actions_elapsed, e.subgoal.name, e.subgoal.interpretation.text(),
                                   e.subgoal.parent, e.subgoal.gain));
  }
  d["subgoals"] = subgoals;
  py::dict policies;
  for (const auto& [goal, list] : r.policies.all()) {
    py::list items;
    for (const auto& sp : list) items.append(py::make_tuple(sp.policy.text(), sp.fitness));
    policies[py::str(goal)] = items;
  }
  d["policies"] = policies;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rulegoal, m) {
  m.doc() = "Rule learning, policy learning and subgoal discovery over recorded transitions";
  harness::init_logging();

  py::register_exception<NotationError>(m, "NotationError", PyExc_ValueError);
  py::register_exception<harness::ConfigFileError>(m, "ConfigFileError", PyExc_ValueError);
  py::register_exception<harness::BufferFileError>(m, "BufferFileError", PyExc_ValueError);

  py::class_<harness::RecordedBuffer>(m, "Buffer")
      .def_static("load", [](const std::string& path) { return harness::load_buffer(path); }, py::arg("path"))
      .def_static("parse", &read_text, py::arg("text"))
      .def("__len__", [](const harness::RecordedBuffer& b) { return b.buffer.size(); })
      .def_property_readonly("segments", [](const harness::RecordedBuffer& b) { return b.buffer.segment_count(); })
      .def_property_readonly("goals",
                             [](const harness::RecordedBuffer& b) {
                               std::map<std::string, std::string> out;
                               for (const auto& g : b.goals.registry().names()) {
                                 out[g] = b.goals.interpretation(g).text();
                               }
                               return out;
                             })
      .def("transition", [](const harness::RecordedBuffer& b, std::size_t i) {
        if (i >= b.buffer.size()) throw py::index_error("transition index out of range");
        const auto& t = b.buffer[i];
        return py::make_tuple(texts(t.pre), t.action, texts(t.post));
      });

  m.def(
      "mine_laws",
      [](const harness::RecordedBuffer& b, const std::string& conclusion, const std::string& config) {
        Evaluator eval(b.buffer, b.goals);
        std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
        for (const auto& l : learn_rules(eval, parse_state(conclusion), config_from(config).agent.rules)) {
          out.emplace_back(l.rule.text(), l.frequency.trials, l.frequency.hits);
        }
        return out;
      },
      py::arg("buffer"), py::arg("conclusion"), py::arg("config") = "",
      "Laws concluding in `conclusion` as (rule, prm, prmconc).");

  m.def(
      "mine_policies",
      [](const harness::RecordedBuffer& b, const std::string& goal, const std::string& config) {
        const auto c = config_from(config);
        Evaluator eval(b.buffer, b.goals);
        std::vector<std::pair<std::string, double>> out;
        for (const auto& sp : learn_policies(eval, b.goals.interpretation(goal), c.agent.rules, c.agent.policies,
                                             subordinate_goal_universe(b.goals, goal))) {
          out.emplace_back(sp.policy.text(), sp.fitness);
        }
        return out;
      },
      py::arg("buffer"), py::arg("goal") = std::string(kPrimaryGoal), py::arg("config") = "");

  m.def(
      "rule_probability",
      [](const harness::RecordedBuffer& b, const std::string& rule) {
        return rulegoal::rule_probability(parse_rule(rule), b.buffer, b.goals);
      },
      py::arg("buffer"), py::arg("rule"));

  m.def(
      "policy_fitness",
      [](const harness::RecordedBuffer& b, const std::string& policy, bool frequency) {
        const Policy p = parse_policy(policy);
        return frequency ? rulegoal::frequency_fitness(p, b.buffer, b.goals) : rulegoal::fitness(p, b.buffer, b.goals);
      },
      py::arg("buffer"), py::arg("policy"), py::arg("frequency") = false);

  m.def(
      "run_episode",
      [](const std::string& config, std::optional<int> k, std::optional<std::uint64_t> seed,
         std::optional<std::size_t> max_actions, bool random) {
        auto c = config_from(config);
        if (k) {
          c.environment.k = *k;
          c.finalize();
        }
        if (seed) c.agent.seed = *seed;
        if (max_actions) c.agent.max_actions = *max_actions;
        if (random) c.agent.learning_enabled = false;
        const EpisodeResult r = [&] {
          py::gil_scoped_release release;
          return run_episode(c.environment, c.agent);
        }();
        return episode_dict(r);
      },
      py::arg("config") = "", py::arg("k") = py::none(), py::arg("seed") = py::none(),
      py::arg("max_actions") = py::none(), py::arg("random") = false);

  m.def(
      "resolved_config", [](const std::string& config) { return harness::format_config(config_from(config)); },
      py::arg("config") = "");

  py::class_<env::GridWorld>(m, "GridWorld")
      .def(py::init([](int width, int height, int k, int items_per_type, std::uint64_t seed) {
             return env::GridWorld(env::Config{width, height, k, items_per_type}, Rng(seed));
           }),
           py::arg("width") = 25, py::arg("height") = 25, py::arg("k") = 1, py::arg("items_per_type") = 10,
           py::arg("seed") = 1)
      .def("observe", [](const env::GridWorld& w) { return texts(w.observe().to_state()); })
      .def("step",
           [](env::GridWorld& w, const std::string& action) {
             auto a = env::parse_action(action);
             if (!a) throw py::value_error("unknown action " + action);
             auto r = w.step(*a);
             if (r.picked_type == w.config().k) w.notify_primary_goal_achieved();
             return py::make_tuple(texts(r.observation.to_state()), r.picked_type);
           })
      .def_property_readonly("agent", [](const env::GridWorld& w) { return py::make_tuple(w.agent().x, w.agent().y); })
      .def("render", &env::GridWorld::render);
}
