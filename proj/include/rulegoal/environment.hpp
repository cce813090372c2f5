#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rulegoal/core/state.hpp"
#include "rulegoal/rng.hpp"

namespace rulegoal {

/// Item Picking grid world.
///
/// Items of types 1..k lie on a grid. Type i is picked up when the agent stands
/// on it, has not picked up type i yet, and i = 1 or type i-1 was picked up
/// before. Picked items respawn at a random free cell. The agent senses the
/// 3x3 field around it in its own frame plus a type-blind PickedUp flag.
namespace env {

enum class Heading : std::uint8_t { north, east, south, west };
enum class Action : std::uint8_t { turn_left, turn_right, move };

inline constexpr std::array<Action, 3> kActions{Action::turn_left, Action::turn_right, Action::move};
std::string_view action_name(Action a);
std::optional<Action> parse_action(std::string_view name);

/// Cell sensors in reporting order.
inline constexpr std::array<std::string_view, 9> kSensorNames{
    "Center", "Front", "FrontRight", "Right", "BackRight", "Back", "BackLeft", "Left", "FrontLeft"};
inline constexpr std::string_view kPickedUpSensor = "PickedUp";

inline constexpr int kEmpty = 0;
inline constexpr int kWall = -1;

struct Position {
  int x = 0;
  int y = 0;
  friend bool operator==(const Position&, const Position&) = default;
};

struct Config {
  int width = 25;
  int height = 25;
  int k = 1;
  int items_per_type = 10;
};

/// One reading per cell sensor (item type, kEmpty or kWall) plus PickedUp.
struct Observation {
  std::array<int, 9> cells{};
  bool picked_up = false;

  int center() const { return cells[0]; }
  int front() const { return cells[1]; }
  State to_state() const;
  friend bool operator==(const Observation&, const Observation&) = default;
};

struct StepResult {
  Observation observation;
  std::optional<int> picked_type;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sensor indication for an item type or kEmpty / kWall.
std::string indication(int reading);
/// {Center(type k), PickedUp}.
State primary_goal_state(int k);

class GridWorld {
 public:
  /// Places k * items_per_type items and the agent at distinct random cells.
  /// Throws ConfigError if the grid cannot hold them.
  GridWorld(const Config& config, Rng rng);

  const Config& config() const { return config_; }
  Observation observe() const;
  StepResult step(Action action);
  /// Clears the inventory after a type-k pickup. Throws std::logic_error if no
  /// type-k pickup is pending.
  void notify_primary_goal_achieved();

  Position agent() const { return agent_; }
  Heading heading() const { return heading_; }
  int item_at(Position p) const;
  bool holds(int type) const { return inventory_.at(static_cast<std::size_t>(type)); }
  std::size_t item_count(int type) const;

  /// Test hooks: rearrange a world by hand.
  void place_agent(Position p, Heading h);
  void set_item(Position p, int type);
  void give(int type) { inventory_.at(static_cast<std::size_t>(type)) = true; }

  /// One character per cell: '.' empty, item type digit, agent as ^ > v <.
  std::string render() const;

 private:
  bool inside(Position p) const;
  int reading(Position p) const;
  std::size_t index(Position p) const;
  void respawn(int type);

  Config config_;
  Rng rng_;
  std::vector<int> cells_;
  Position agent_;
  Heading heading_ = Heading::north;
  std::vector<bool> inventory_;
  bool primary_pending_ = false;
};

}  // namespace env
}  // namespace rulegoal
