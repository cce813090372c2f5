#include <gtest/gtest.h>

#include "rulegoal/core/notation.hpp"
#include "rulegoal/environment.hpp"

using namespace rulegoal;
using namespace rulegoal::env;

namespace {

// A world with every item removed, the agent in the middle facing north.
GridWorld empty_world(int k, int size = 7) {
  GridWorld w(Config{size, size, k, 1}, Rng(5));
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) w.set_item({x, y}, kEmpty);
  }
  w.place_agent({size / 2, size / 2}, Heading::north);
  return w;
}

}  // namespace

TEST(GridWorld, PlacesItemsAndAgent) {
  GridWorld w(Config{25, 25, 3, 10}, Rng(1));
  for (int type = 1; type <= 3; ++type) EXPECT_EQ(w.item_count(type), 10U);
  EXPECT_EQ(w.item_at(w.agent()), kEmpty);
  EXPECT_THROW(GridWorld(Config{2, 2, 2, 2}, Rng(1)), ConfigError);
  EXPECT_THROW(GridWorld(Config{5, 5, 0, 2}, Rng(1)), ConfigError);
}

TEST(GridWorld, EgocentricSensors) {
  auto w = empty_world(1);
  w.set_item({3, 2}, 1);  // north of the agent
  w.set_item({4, 3}, 1);  // east
  auto o = w.observe();
  EXPECT_EQ(o.front(), 1);
  EXPECT_EQ(o.cells[3], 1);  // Right
  EXPECT_EQ(o.cells[7], kEmpty);

  // Turning right brings the east item to the front and the north one to the left.
  o = w.step(Action::turn_right).observation;
  EXPECT_EQ(w.heading(), Heading::east);
  EXPECT_EQ(o.front(), 1);
  EXPECT_EQ(o.cells[7], 1);
  EXPECT_FALSE(o.picked_up);

  o = w.step(Action::turn_left).observation;
  EXPECT_EQ(w.heading(), Heading::north);
  EXPECT_EQ(o.cells[3], 1);
}

TEST(GridWorld, WallsBlockMovement) {
  auto w = empty_world(1, 3);
  w.place_agent({0, 0}, Heading::north);
  auto o = w.observe();
  EXPECT_EQ(o.front(), kWall);
  EXPECT_EQ(o.cells[8], kWall);
  EXPECT_EQ(o.cells[7], kWall);
  EXPECT_EQ(o.cells[3], kEmpty);
  w.step(Action::move);
  EXPECT_EQ(w.agent(), (Position{0, 0}));
  EXPECT_TRUE(w.observe().to_state().contains(Predicate::sensor("Front", "wall")));
}

TEST(GridWorld, PickupShowsItemThenRespawns) {
  auto w = empty_world(1);
  w.set_item({3, 2}, 1);
  auto r = w.step(Action::move);
  ASSERT_EQ(r.picked_type, 1);
  EXPECT_EQ(r.observation.center(), 1);
  EXPECT_TRUE(r.observation.picked_up);
  EXPECT_TRUE(r.observation.to_state().includes(primary_goal_state(1)));
  EXPECT_EQ(w.item_at(w.agent()), kEmpty);
  EXPECT_EQ(w.item_count(1), 1U);
  EXPECT_TRUE(w.holds(1));
  w.notify_primary_goal_achieved();
  EXPECT_FALSE(w.holds(1));
  EXPECT_THROW(w.notify_primary_goal_achieved(), std::logic_error);
}

TEST(GridWorld, PickupOrderIsEnforced) {
  auto w = empty_world(2);
  w.set_item({3, 2}, 2);
  w.set_item({3, 1}, 1);
  auto r = w.step(Action::move);
  EXPECT_FALSE(r.picked_type);
  EXPECT_FALSE(r.observation.picked_up);
  EXPECT_EQ(r.observation.center(), 2);
  EXPECT_EQ(w.item_at({3, 2}), 2);

  r = w.step(Action::move);
  EXPECT_EQ(r.picked_type, 1);
  EXPECT_EQ(w.item_count(1), 1U);

  // Back onto type 2, now holding type 1.
  w.step(Action::turn_right);
  w.step(Action::turn_right);
  r = w.step(Action::move);
  ASSERT_EQ(r.picked_type, 2);
  EXPECT_TRUE(r.observation.to_state().includes(primary_goal_state(2)));
  w.notify_primary_goal_achieved();
  EXPECT_FALSE(w.holds(1));
  EXPECT_FALSE(w.holds(2));
}

TEST(GridWorld, SecondPickupOfTheSameTypeIsIgnored) {
  auto w = empty_world(2);
  w.set_item({3, 2}, 1);
  w.set_item({3, 1}, 1);
  EXPECT_EQ(w.step(Action::move).picked_type, 1);
  auto r = w.step(Action::move);
  EXPECT_FALSE(r.picked_type);
  EXPECT_EQ(r.observation.center(), 1);
}

TEST(GridWorld, DeterministicForASeed) {
  GridWorld a(Config{25, 25, 3, 10}, Rng(42));
  GridWorld b(Config{25, 25, 3, 10}, Rng(42));
  Rng actions(7);
  for (int i = 0; i < 2000; ++i) {
    const Action act = kActions[actions.below(3)];
    auto ra = a.step(act);
    auto rb = b.step(act);
    ASSERT_EQ(ra.observation, rb.observation);
    ASSERT_EQ(ra.picked_type, rb.picked_type);
    if (ra.picked_type == 3) {
      a.notify_primary_goal_achieved();
      b.notify_primary_goal_achieved();
    }
  }
  EXPECT_EQ(a.render(), b.render());
}

TEST(GridWorld, ObservationState) {
  auto w = empty_world(3);
  auto s = w.observe().to_state();
  EXPECT_EQ(s.size(), 9U);
  EXPECT_TRUE(s.contains(Predicate::sensor("Center", "empty")));
  EXPECT_FALSE(s.contains(Predicate::sensor("PickedUp")));
  EXPECT_EQ(primary_goal_state(3), parse_state("Center(type3), PickedUp"));
  EXPECT_EQ(parse_action("turn-right"), Action::turn_right);
  EXPECT_FALSE(parse_action("jump"));
}
