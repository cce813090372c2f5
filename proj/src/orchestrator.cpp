#include "rulegoal/orchestrator.hpp"

#include <algorithm>
#include <chrono>
#include <spdlog/spdlog.h>
#include <stdexcept>

namespace rulegoal {

void AgentConfig::validate() const {
  if (n_round == 0) throw std::invalid_argument("n_round must be positive");
  if (m_round != 0 && (m_round < n_round || m_round % n_round != 0)) {
    throw std::invalid_argument("m_round must be a multiple of n_round");
  }
  if (window == 0) throw std::invalid_argument("window must be positive");
  if (buffer_capacity && *buffer_capacity == 0) throw std::invalid_argument("buffer_capacity must be positive");
  rules.validate();
  policies.validate();
  subgoals.validate();
}

PolicyStore learn_all_policies(const ReplayBuffer& buffer, const GoalHierarchy& goals, const AgentConfig& config,
                               std::vector<Law>* laws) {
  PolicyStore store;
  if (buffer.empty()) return store;
  Evaluator eval(buffer, goals);
  LawCache cache(eval, config.rules);
  for (const auto& g : goals.subordinate_order()) {
    store.set(g, learn_policies(cache, goals.interpretation(g), config.policies, subordinate_goal_universe(goals, g)));
  }
  if (laws) *laws = cache.all_laws();
  return store;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Episode {
 public:
  Episode(const env::Config& env_config, const AgentConfig& config)
      : config_(config),
        root_(config.seed),
        world_(env_config, root_.split("environment")),
        rng_(root_.split("agent")),
        buffer_(config.buffer_capacity),
        goals_(env::primary_goal_state(env_config.k)),
        tracker_(goals_),
        current_(world_.observe().to_state()) {
    for (auto a : env::kActions) actions_.emplace_back(env::action_name(a));
  }

  EpisodeResult run() {
    const std::size_t max = config_.max_actions;
    while (t_ < max && t_ < config_.n_round) act(false);
    while (config_.learning_enabled) {
      learn_round();
      if (t_ >= max) break;
      for (std::size_t i = 0; i < config_.n_round && t_ < max; ++i) act(true);
    }
    while (t_ < max) act(false);
    close_window();
    stats_.actions = t_;
    return EpisodeResult{std::move(stats_), std::move(buffer_), std::move(goals_), std::move(store_),
                         std::move(laws_), std::move(trace_)};
  }

 private:
  void act(bool planned) {
    PlanResult r;
    if (planned) {
      r = plan(kPrimaryGoal, store_, goals_, Situation{current_, tracker_.achieved()}, actions_, rng_);
    } else {
      r.action = actions_[rng_.below(actions_.size())];
    }
    const env::StepResult step = world_.step(*env::parse_action(r.action));
    State post = step.observation.to_state();
    buffer_.append({current_, r.action, post});
    tracker_.observe(post);
    ++t_;
    ++in_window_;
    if (r.was_random) {
      ++stats_.random_actions;
      ++random_in_window_;
    } else {
      ++stats_.planned_actions;
    }
    if (config_.drop_failed_policies && r.policy && step.picked_type != world_.config().k) {
      check_prediction(r, post);
    }
    if (config_.trace) trace_.push_back(std::to_string(t_) + "\t" + current_.text() + "\t" + r.trace());

    if (step.picked_type == world_.config().k) {
      ++stats_.primary_goals;
      ++goals_in_window_;
      world_.notify_primary_goal_achieved();
      // Inventory and subgoal achievements start over: a new segment.
      buffer_.begin_segment();
      tracker_.reset();
      current_ = world_.observe().to_state();
    } else {
      // The agent acts next from what it last perceived.
      current_ = std::move(post);
    }
    if (in_window_ == config_.window) close_window();
  }

  void check_prediction(const PlanResult& r, const State& post) {
    const auto& steps = r.policy->steps();
    const State& expected = steps.size() > 1 ? steps[1].state : r.policy->target();
    const Situation now{post, tracker_.achieved()};
    if (std::all_of(expected.begin(), expected.end(), [&](const Predicate& p) { return now.satisfies(p); })) return;
    if (store_.remove(r.path.back(), *r.policy)) ++stats_.dropped_policies;
  }

  void close_window() {
    if (in_window_ == 0) return;
    WindowStats w;
    w.index = stats_.windows.size();
    w.actions_elapsed = t_;
    w.goals_in_window = goals_in_window_;
    w.cumulative_goals = stats_.primary_goals;
    w.random_action_fraction = static_cast<double>(random_in_window_) / static_cast<double>(in_window_);
    stats_.windows.push_back(w);
    in_window_ = goals_in_window_ = random_in_window_ = 0;
  }

  void learn_round() {
    RoundStats round;
    round.actions_elapsed = t_;
    auto start = Clock::now();
    store_ = learn_all_policies(buffer_, goals_, config_, &laws_);
    round.learning_seconds = seconds_since(start);

    if (t_ > 0 && t_ % config_.discovery_every() == 0) {
      start = Clock::now();
      for (const auto& g : goals_.subordinate_order()) {
        std::size_t room = static_cast<std::size_t>(-1);
        if (config_.subgoal_capacity) {
          const std::size_t used = goals_.subgoal_count();
          room = used >= *config_.subgoal_capacity ? 0 : *config_.subgoal_capacity - used;
        }
        if (room == 0) break;
        auto report = discover(buffer_, goals_, g, config_.rules, config_.policies, config_.subgoals, room);
        for (auto& s : report.accepted) {
          spdlog::info("t={} accepted {} = {} below {} (gain {:.4f})", t_, s.name, s.interpretation.text(),
                       s.parent, s.gain);
          stats_.subgoal_log.push_back({t_, std::move(s)});
          ++round.subgoals_accepted;
        }
      }
      round.discovery_seconds = seconds_since(start);
      if (round.subgoals_accepted > 0) {
        goals_.validate();
        start = Clock::now();
        store_ = learn_all_policies(buffer_, goals_, config_, &laws_);
        round.learning_seconds += seconds_since(start);
        tracker_.rebuild(buffer_);
      }
    }
    round.policies = store_.total();
    spdlog::debug("t={} round: {} policies, {} goals, learn {:.3f}s, discovery {:.3f}s", t_, round.policies,
                  goals_.registry().size(), round.learning_seconds, round.discovery_seconds);
    stats_.rounds.push_back(round);
  }

  const AgentConfig& config_;
  Rng root_;
  env::GridWorld world_;
  Rng rng_;
  ReplayBuffer buffer_;
  GoalHierarchy goals_;
  GoalTracker tracker_;
  State current_;
  PolicyStore store_;
  std::vector<Law> laws_;
  std::vector<std::string> actions_;
  std::vector<std::string> trace_;
  RunStats stats_;
  std::size_t t_ = 0;
  std::size_t in_window_ = 0;
  std::size_t goals_in_window_ = 0;
  std::size_t random_in_window_ = 0;
};

}  // namespace

EpisodeResult run_episode(const env::Config& env_config, const AgentConfig& config) {
  config.validate();
  Episode episode(env_config, config);
  return episode.run();
}

ExperimentResult run_experiment(const env::Config& env_config, const AgentConfig& config, std::size_t runs,
                                const std::function<void(std::size_t, const EpisodeResult&)>& on_run) {
  if (runs == 0) throw std::invalid_argument("runs must be positive");
  ExperimentResult out;
  for (std::size_t i = 0; i < runs; ++i) {
    AgentConfig c = config;
    c.seed = config.seed + i;
    EpisodeResult r = run_episode(env_config, c);
    if (on_run) on_run(i, r);
    out.runs.push_back(std::move(r.stats));
  }
  std::size_t windows = 0;
  for (const auto& r : out.runs) windows = std::max(windows, r.windows.size());
  const double n = static_cast<double>(runs);
  for (std::size_t w = 0; w < windows; ++w) {
    ExperimentRow row;
    row.window_index = w;
    for (const auto& r : out.runs) {
      // Runs share max_actions, so they have the same windows.
      const WindowStats& s = r.windows.at(w);
      row.actions_elapsed = s.actions_elapsed;
      row.mean_goals_in_window += static_cast<double>(s.goals_in_window) / n;
      row.mean_cumulative_goals += static_cast<double>(s.cumulative_goals) / n;
      row.mean_random_action_fraction += s.random_action_fraction / n;
      row.goals_per_run.push_back(s.goals_in_window);
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace rulegoal
