#include <gtest/gtest.h>

#include <sstream>

#include "rulegoal/harness/dumps.hpp"
#include "rulegoal/orchestrator.hpp"

using namespace rulegoal;

namespace {

env::Config small_world(int k = 1) { return env::Config{8, 8, k, 4}; }

AgentConfig quick(std::uint64_t seed) {
  AgentConfig c;
  c.n_round = 60;
  c.max_actions = 300;
  c.window = 100;
  c.seed = seed;
  return c;
}

std::string csv(const RunStats& s) {
  std::ostringstream out;
  harness::write_run_csv(out, s);
  return out.str();
}

}  // namespace

TEST(Episode, CountsAddUp) {
  auto r = run_episode(small_world(), quick(1));
  const auto& s = r.stats;
  EXPECT_EQ(s.actions, 300U);
  EXPECT_EQ(s.random_actions + s.planned_actions, s.actions);
  EXPECT_EQ(r.buffer.size(), s.actions);
  ASSERT_EQ(s.windows.size(), 3U);
  std::size_t sum = 0;
  for (std::size_t i = 0; i < s.windows.size(); ++i) {
    EXPECT_EQ(s.windows[i].index, i);
    EXPECT_EQ(s.windows[i].actions_elapsed, (i + 1) * 100);
    sum += s.windows[i].goals_in_window;
    EXPECT_EQ(s.windows[i].cumulative_goals, sum);
  }
  EXPECT_EQ(sum, s.primary_goals);
  // Learning rounds at 60, 120, ..., 300.
  EXPECT_EQ(s.rounds.size(), 5U);
  EXPECT_GE(s.windows[0].random_action_fraction, 0.6);
  const auto segments = r.buffer.segment_count();
  EXPECT_TRUE(segments == s.primary_goals || segments == s.primary_goals + 1);
}

TEST(Episode, DeterministicForASeed) {
  auto a = run_episode(small_world(2), quick(9));
  auto b = run_episode(small_world(2), quick(9));
  EXPECT_EQ(csv(a.stats), csv(b.stats));
  EXPECT_EQ(a.buffer.tuples(), b.buffer.tuples());
  std::ostringstream pa, pb;
  harness::write_policies(pa, a.policies);
  harness::write_policies(pb, b.policies);
  EXPECT_EQ(pa.str(), pb.str());
  auto c = run_episode(small_world(2), quick(10));
  EXPECT_NE(a.buffer.tuples(), c.buffer.tuples());
}

TEST(Episode, RandomBaselineNeverPlans) {
  auto config = quick(3);
  config.learning_enabled = false;
  auto r = run_episode(small_world(), config);
  EXPECT_EQ(r.stats.random_actions, r.stats.actions);
  EXPECT_TRUE(r.stats.rounds.empty());
  EXPECT_EQ(r.goals.subgoal_count(), 0U);
  EXPECT_EQ(r.policies.total(), 0U);
}

TEST(Episode, LearnsToPickUpASingleType) {
  // With one type nothing is worth a subgoal, and a trained agent plans.
  auto config = quick(4);
  config.max_actions = 600;
  auto r = run_episode(small_world(), config);
  EXPECT_GT(r.stats.planned_actions, 0U);
  EXPECT_GT(r.policies.policies(kPrimaryGoal).size(), 0U);
  EXPECT_FALSE(r.laws.empty());
}

TEST(Episode, TraceHasOneLinePerAction) {
  auto config = quick(5);
  config.trace = true;
  auto r = run_episode(small_world(), config);
  ASSERT_EQ(r.trace.size(), r.stats.actions);
  EXPECT_EQ(r.trace.front().rfind("1\t", 0), 0U);
}

TEST(Episode, BufferCapacityIsHonoured) {
  auto config = quick(6);
  config.buffer_capacity = 120;
  auto r = run_episode(small_world(), config);
  // Only the segment being written may run past the cap.
  EXPECT_TRUE(r.buffer.size() <= 120U || r.buffer.segment_count() == 1U);
  EXPECT_EQ(r.stats.actions, 300U);
}

TEST(AgentConfig, Validation) {
  AgentConfig c;
  c.n_round = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AgentConfig{};
  c.m_round = 150;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.m_round = 300;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.discovery_every(), 300U);
  c = AgentConfig{};
  EXPECT_EQ(c.discovery_every(), c.n_round);
}

TEST(Experiment, AveragesWindowsAcrossRuns) {
  auto config = quick(20);
  config.learning_enabled = false;
  std::size_t calls = 0;
  auto result = run_experiment(small_world(), config, 3, [&](std::size_t, const EpisodeResult&) { ++calls; });
  EXPECT_EQ(calls, 3U);
  ASSERT_EQ(result.runs.size(), 3U);
  ASSERT_EQ(result.rows.size(), 3U);
  for (std::size_t w = 0; w < result.rows.size(); ++w) {
    const auto& row = result.rows[w];
    ASSERT_EQ(row.goals_per_run.size(), 3U);
    double mean = 0.0, cumulative = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_EQ(row.goals_per_run[i], result.runs[i].windows[w].goals_in_window);
      mean += static_cast<double>(result.runs[i].windows[w].goals_in_window) / 3.0;
      cumulative += static_cast<double>(result.runs[i].windows[w].cumulative_goals) / 3.0;
    }
    EXPECT_NEAR(row.mean_goals_in_window, mean, 1e-12);
    EXPECT_NEAR(row.mean_cumulative_goals, cumulative, 1e-12);
    EXPECT_DOUBLE_EQ(row.mean_random_action_fraction, 1.0);
  }
  EXPECT_THROW(run_experiment(small_world(), config, 0), std::invalid_argument);
}
