#include "rulegoal/environment.hpp"

#include <stdexcept>

namespace rulegoal::env {

namespace {

constexpr std::array<Position, 4> kForward{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

Position add(Position a, Position b) { return {a.x + b.x, a.y + b.y}; }
Position neg(Position a) { return {-a.x, -a.y}; }

}  // namespace

std::string_view action_name(Action a) {
  switch (a) {
    case Action::turn_left:
      return "turn-left";
    case Action::turn_right:
      return "turn-right";
    case Action::move:
      return "move";
  }
  return "?";
}

std::optional<Action> parse_action(std::string_view name) {
  for (auto a : kActions) {
    if (action_name(a) == name) return a;
  }
  return std::nullopt;
}

std::string indication(int reading) {
  if (reading == kEmpty) return "empty";
  if (reading == kWall) return "wall";
  return "type" + std::to_string(reading);
}

State Observation::to_state() const {
  std::vector<Predicate> preds;
  preds.reserve(10);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    preds.push_back(Predicate::sensor(std::string(kSensorNames[i]), indication(cells[i])));
  }
  if (picked_up) preds.push_back(Predicate::sensor(std::string(kPickedUpSensor)));
  return State(std::move(preds));
}

State primary_goal_state(int k) {
  return State{Predicate::sensor("Center", indication(k)), Predicate::sensor(std::string(kPickedUpSensor))};
}

GridWorld::GridWorld(const Config& config, Rng rng) : config_(config), rng_(std::move(rng)) {
  if (config.width < 1 || config.height < 1) throw ConfigError("grid dimensions must be positive");
  if (config.k < 1) throw ConfigError("item type count k must be at least 1");
  if (config.items_per_type < 1) throw ConfigError("items_per_type must be at least 1");
  const long cells = static_cast<long>(config.width) * config.height;
  const long items = static_cast<long>(config.k) * config.items_per_type;
  if (items + 1 > cells) {
    throw ConfigError("grid of " + std::to_string(cells) + " cells cannot hold " + std::to_string(items) +
                      " items and the agent");
  }
  cells_.assign(static_cast<std::size_t>(cells), kEmpty);
  inventory_.assign(static_cast<std::size_t>(config.k) + 1, false);

  std::vector<std::size_t> order(cells_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Partial Fisher-Yates: the first items+1 slots are a uniform sample.
  for (std::size_t i = 0; i < static_cast<std::size_t>(items + 1); ++i) {
    std::size_t j = i + rng_.below(order.size() - i);
    std::swap(order[i], order[j]);
  }
  std::size_t next = 0;
  for (int type = 1; type <= config.k; ++type) {
    for (int n = 0; n < config.items_per_type; ++n) cells_[order[next++]] = type;
  }
  const std::size_t a = order[next];
  agent_ = {static_cast<int>(a % static_cast<std::size_t>(config.width)),
            static_cast<int>(a / static_cast<std::size_t>(config.width))};
  heading_ = static_cast<Heading>(rng_.below(4));
}

bool GridWorld::inside(Position p) const {
  return p.x >= 0 && p.y >= 0 && p.x < config_.width && p.y < config_.height;
}

std::size_t GridWorld::index(Position p) const {
  return static_cast<std::size_t>(p.y) * static_cast<std::size_t>(config_.width) +
         static_cast<std::size_t>(p.x);
}

int GridWorld::reading(Position p) const { return inside(p) ? cells_[index(p)] : kWall; }

int GridWorld::item_at(Position p) const {
  if (!inside(p)) throw std::out_of_range("position outside grid");
  return cells_[index(p)];
}

std::size_t GridWorld::item_count(int type) const {
  std::size_t n = 0;
  for (int c : cells_) n += c == type;
  return n;
}

Observation GridWorld::observe() const {
  const Position f = kForward[static_cast<std::size_t>(heading_)];
  const Position r = kForward[(static_cast<std::size_t>(heading_) + 1) % 4];
  const Position b = neg(f);
  const Position l = neg(r);
  Observation o;
  o.cells = {reading(agent_),
             reading(add(agent_, f)),
             reading(add(add(agent_, f), r)),
             reading(add(agent_, r)),
             reading(add(add(agent_, b), r)),
             reading(add(agent_, b)),
             reading(add(add(agent_, b), l)),
             reading(add(agent_, l)),
             reading(add(add(agent_, f), l))};
  return o;
}

StepResult GridWorld::step(Action action) {
  const auto h = static_cast<std::size_t>(heading_);
  switch (action) {
    case Action::turn_left:
      heading_ = static_cast<Heading>((h + 3) % 4);
      break;
    case Action::turn_right:
      heading_ = static_cast<Heading>((h + 1) % 4);
      break;
    case Action::move: {
      const Position target = add(agent_, kForward[h]);
      if (inside(target)) agent_ = target;
      break;
    }
  }
  StepResult result;
  const int item = cells_[index(agent_)];
  if (item > 0 && !holds(item) && (item == 1 || holds(item - 1))) {
    inventory_[static_cast<std::size_t>(item)] = true;
    result.picked_type = item;
  }
  // The snapshot still shows the item under the agent.
  result.observation = observe();
  result.observation.picked_up = result.picked_type.has_value();
  if (result.picked_type) {
    cells_[index(agent_)] = kEmpty;
    respawn(item);
    if (item == config_.k) primary_pending_ = true;
  }
  return result;
}

void GridWorld::respawn(int type) {
  std::vector<std::size_t> free;
  const std::size_t agent = index(agent_);
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i] == kEmpty && i != agent) free.push_back(i);
  }
  if (free.empty()) throw std::logic_error("no free cell to respawn an item");
  cells_[free[rng_.below(free.size())]] = type;
}

void GridWorld::notify_primary_goal_achieved() {
  if (!primary_pending_) throw std::logic_error("primary goal notification without a type-k pickup");
  primary_pending_ = false;
  inventory_.assign(inventory_.size(), false);
}

void GridWorld::place_agent(Position p, Heading h) {
  if (!inside(p)) throw std::out_of_range("agent position outside grid");
  agent_ = p;
  heading_ = h;
}

void GridWorld::set_item(Position p, int type) {
  if (type < 0 || type > config_.k) throw std::out_of_range("item type out of range");
  cells_[index(p)] = type;
}

std::string GridWorld::render() const {
  static constexpr std::array<char, 4> kAgent{'^', '>', 'v', '<'};
  std::string out;
  for (int y = 0; y < config_.height; ++y) {
    for (int x = 0; x < config_.width; ++x) {
      const Position p{x, y};
      if (p == agent_) {
        out += kAgent[static_cast<std::size_t>(heading_)];
      } else {
        const int c = cells_[index(p)];
        out += c == kEmpty ? '.' : static_cast<char>(c < 10 ? '0' + c : 'a' + (c - 10));
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace rulegoal::env
