#pragma once

// Random small buffers for property tests. Seeded std::mt19937_64 only, so a
// failing case is reproduced from its seed alone.

#include <random>
#include <string>
#include <vector>

#include "rulegoal/core/goals.hpp"
#include "rulegoal/core/replay_buffer.hpp"

namespace gen {

struct Shape {
  std::size_t tuples = 30;
  int sensor_names = 4;
  int indications = 2;
  int actions = 2;
  /// 1: primary goal only; 2: plus one subgoal below it.
  int goals = 2;
  double new_segment = 0.1;
};

struct Sample {
  rulegoal::ReplayBuffer buffer;
  rulegoal::GoalHierarchy goals;
};

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline rulegoal::State random_state(std::mt19937_64& rng, const Shape& shape) {
  std::vector<rulegoal::Predicate> preds;
  for (int s = 0; s < shape.sensor_names; ++s) {
    if (uniform(rng, 0, 3) == 0) continue;
    preds.push_back(rulegoal::Predicate::sensor("s" + std::to_string(s),
                                                "v" + std::to_string(uniform(rng, 0, shape.indications - 1))));
  }
  if (preds.empty()) preds.push_back(rulegoal::Predicate::sensor("s0", "v0"));
  return rulegoal::State(std::move(preds));
}

// A one or two predicate subset of a state that actually occurs, so goals get reached.
inline rulegoal::State pick_goal_state(std::mt19937_64& rng, const std::vector<rulegoal::State>& seen) {
  const auto& s = seen[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(seen.size()) - 1))];
  const auto& p = s.predicates();
  rulegoal::State out{p[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(p.size()) - 1))]};
  if (p.size() > 1 && uniform(rng, 0, 2) == 0) {
    out.insert(p[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(p.size()) - 1))]);
  }
  return out;
}

inline Sample random_sample(std::mt19937_64& rng, const Shape& shape) {
  rulegoal::ReplayBuffer buffer;
  std::vector<rulegoal::State> posts;
  rulegoal::State current = random_state(rng, shape);
  for (std::size_t i = 0; i < shape.tuples; ++i) {
    if (i > 0 && std::bernoulli_distribution(shape.new_segment)(rng)) {
      buffer.begin_segment();
      current = random_state(rng, shape);
    }
    rulegoal::State post = random_state(rng, shape);
    std::string action = "a" + std::to_string(uniform(rng, 0, shape.actions - 1));
    buffer.append({current, action, post});
    posts.push_back(post);
    current = post;
  }
  rulegoal::GoalHierarchy goals(pick_goal_state(rng, posts));
  if (shape.goals > 1) goals.add_subgoal(pick_goal_state(rng, posts), rulegoal::kPrimaryGoal);
  return {std::move(buffer), std::move(goals)};
}

}  // namespace gen
