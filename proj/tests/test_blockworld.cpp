// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

#include <gtest/gtest.h>

#include <random>

#include "empower/blockworld.hpp"
#include "empower/snapshot.hpp"

using namespace empower;

namespace {

// Flat ground: every cell with z < ground is earth.
WorldState flat(Dims d, int ground, Vec3 agent) {
  WorldState w(d, agent);
  for (int z = 0; z < ground; ++z)
    for (int y = 0; y < d.depth; ++y)
      for (int x = 0; x < d.width; ++x) w.set_cell({x, y, z}, Cell::Earth);
  return w;
}

int held(const WorldState& w) { return w.inventory() == Inventory::HoldsEarth ? 1 : 0; }

// Random world with some earth, some lava and a free agent cell.
WorldState random_world(std::mt19937_64& gen, bool with_lava) {
  const Dims d{2 + static_cast<int>(gen() % 3), 2 + static_cast<int>(gen() % 3),
               2 + static_cast<int>(gen() % 4)};
  const Vec3 agent{static_cast<int>(gen() % d.width), static_cast<int>(gen() % d.depth),
                   static_cast<int>(gen() % d.height)};
  WorldState w(d, agent);
  for (int z = 0; z < d.height; ++z)
    for (int y = 0; y < d.depth; ++y)
      for (int x = 0; x < d.width; ++x) {
        const Vec3 p{x, y, z};
        if (p == agent) continue;
        const auto r = gen() % 10;
        if (r < 4) w.set_cell(p, Cell::Earth);
        if (with_lava && r == 9) w.set_cell(p, Cell::Lava);
      }
  if (with_lava) w.set_lava_period(1 + static_cast<std::uint32_t>(gen() % 3));
  if (gen() % 2) w.set_inventory(Inventory::HoldsEarth);
  return w;
}

}  // namespace

TEST(ActionSet, Sizes) {
  EXPECT_EQ(action_set(Embodiment::Climbing).size(), 12u);
  EXPECT_EQ(action_set(Embodiment::Flying).size(), 14u);
  const auto c = action_set(Embodiment::Climbing);
  const auto n = action_set(Embodiment::NonClimbing);
  EXPECT_TRUE(std::equal(c.begin(), c.end(), n.begin(), n.end()));
  EXPECT_FALSE(in_action_set(Action::MoveUp, Embodiment::Climbing));
  EXPECT_TRUE(in_action_set(Action::MoveDown, Embodiment::Flying));
}

TEST(ApplyAction, ClimbOntoBlock) {
  WorldState w = flat({3, 3, 4}, 1, {1, 1, 1});
  w.set_cell({1, 2, 1}, Cell::Earth);
  const auto c = apply_action(w, Action::MoveNorth, Embodiment::Climbing);
  EXPECT_EQ(c.agent_pos(), (Vec3{1, 2, 2}));
  const auto n = apply_action(w, Action::MoveNorth, Embodiment::NonClimbing);
  EXPECT_EQ(n.agent_pos(), (Vec3{1, 1, 1}));
  const auto f = apply_action(w, Action::MoveNorth, Embodiment::Flying);
  EXPECT_EQ(f.agent_pos(), (Vec3{1, 1, 1}));
}

TEST(ApplyAction, ClimbBlockedByTwoHighWall) {
  WorldState w = flat({3, 3, 4}, 1, {1, 1, 1});
  w.set_cell({1, 2, 1}, Cell::Earth);
  w.set_cell({1, 2, 2}, Cell::Earth);
  EXPECT_EQ(apply_action(w, Action::MoveNorth, Embodiment::Climbing).agent_pos(),
            (Vec3{1, 1, 1}));
}

TEST(ApplyAction, BoundariesBlock) {
  WorldState w = flat({2, 2, 3}, 1, {0, 0, 1});
  EXPECT_EQ(apply_action(w, Action::MoveWest, Embodiment::Climbing), w);
  EXPECT_EQ(apply_action(w, Action::MoveSouth, Embodiment::Climbing), w);
  EXPECT_EQ(apply_action(w, Action::InteractWest, Embodiment::Climbing), w);
  WorldState top = flat({2, 2, 2}, 1, {0, 0, 1});
  EXPECT_EQ(apply_action(top, Action::MoveUp, Embodiment::Flying), top);
}

TEST(ApplyAction, TakeAndPlace) {
  WorldState w = flat({3, 3, 3}, 1, {1, 1, 1});
  const auto took = apply_action(w, Action::InteractDown, Embodiment::Climbing);
  EXPECT_EQ(took.inventory(), Inventory::HoldsEarth);
  EXPECT_EQ(took.cell({1, 1, 0}), Cell::Empty);
  EXPECT_EQ(took.agent_pos(), (Vec3{1, 1, 1}));  // falls only in the world update

  const auto placed = apply_action(took, Action::InteractEast, Embodiment::Climbing);
  EXPECT_EQ(placed.inventory(), Inventory::Empty);
  EXPECT_EQ(placed.cell({2, 1, 1}), Cell::Earth);

  // Holding a block, a filled target is a no-op.
  WorldState walled = took;
  walled.set_cell({0, 1, 1}, Cell::Earth);
  EXPECT_EQ(apply_action(walled, Action::InteractWest, Embodiment::Climbing), walled);
  // Empty-handed, an empty target is a no-op.
  EXPECT_EQ(apply_action(w, Action::InteractNorth, Embodiment::Climbing), w);
}

TEST(ApplyAction, LavaIsNeverTaken) {
  WorldState w = flat({3, 3, 3}, 1, {1, 1, 1});
  w.set_cell({2, 1, 1}, Cell::Lava);
  const auto r = apply_action(w, Action::InteractEast, Embodiment::Climbing);
  EXPECT_EQ(r.cell({2, 1, 1}), Cell::Lava);
  EXPECT_EQ(r.inventory(), Inventory::Empty);
}

TEST(ApplyAction, DestroyEmptiesInventory) {
  WorldState w = flat({3, 3, 3}, 1, {1, 1, 1});
  w.set_inventory(Inventory::HoldsEarth);
  EXPECT_EQ(apply_action(w, Action::Destroy, Embodiment::Climbing).inventory(), Inventory::Empty);
  WorldState e = flat({3, 3, 3}, 1, {1, 1, 1});
  EXPECT_EQ(apply_action(e, Action::Destroy, Embodiment::Climbing), e);
}

TEST(ApplyAction, FlyingVerticalMoves) {
  WorldState w = flat({3, 3, 4}, 1, {1, 1, 2});
  EXPECT_EQ(apply_action(w, Action::MoveUp, Embodiment::Flying).agent_pos(), (Vec3{1, 1, 3}));
  EXPECT_EQ(apply_action(w, Action::MoveDown, Embodiment::Flying).agent_pos(), (Vec3{1, 1, 1}));
  WorldState g = flat({3, 3, 4}, 1, {1, 1, 1});
  EXPECT_EQ(apply_action(g, Action::MoveDown, Embodiment::Flying).agent_pos(), (Vec3{1, 1, 1}));
}

TEST(ApplyAction, RejectsForeignAction) {
  WorldState w = flat({3, 3, 3}, 1, {1, 1, 1});
  EXPECT_THROW(apply_action(w, Action::MoveUp, Embodiment::Climbing), ContractViolation);
  EXPECT_THROW(step(w, Action::MoveDown, Embodiment::NonClimbing), ContractViolation);
}

TEST(ApplyAction, InputUnmodified) {
  WorldState w = flat({3, 3, 3}, 1, {1, 1, 1});
  const WorldState copy = w;
  (void)apply_action(w, Action::InteractDown, Embodiment::Climbing);
  (void)step(w, Action::MoveEast, Embodiment::Climbing);
  EXPECT_EQ(w, copy);
}

TEST(WorldUpdate, GravityOneCellPerTurn) {
  WorldState w = flat({3, 3, 5}, 1, {1, 1, 4});
  auto u = world_update(w, Embodiment::Climbing);
  EXPECT_EQ(u.agent_pos(), (Vec3{1, 1, 3}));
  EXPECT_EQ(u.turn(), 1u);
  u = world_update(u, Embodiment::Climbing);
  u = world_update(u, Embodiment::Climbing);
  EXPECT_EQ(u.agent_pos(), (Vec3{1, 1, 1}));
  u = world_update(u, Embodiment::Climbing);
  EXPECT_EQ(u.agent_pos(), (Vec3{1, 1, 1}));
  EXPECT_EQ(world_update(w, Embodiment::Flying).agent_pos(), (Vec3{1, 1, 4}));
}

TEST(WorldUpdate, FloorSupportsAgent) {
  WorldState w({2, 2, 2}, {0, 0, 0});
  EXPECT_EQ(world_update(w, Embodiment::Climbing).agent_pos(), (Vec3{0, 0, 0}));
}

TEST(WorldUpdate, LavaFallsIntoEmptyBelow) {
  WorldState w = flat({3, 3, 6}, 1, {0, 0, 1});
  w.set_cell({2, 2, 4}, Cell::Lava);
  w.set_lava_period(1);
  const auto u = world_update(w, Embodiment::Climbing);
  EXPECT_EQ(u.cell({2, 2, 4}), Cell::Lava);
  EXPECT_EQ(u.cell({2, 2, 3}), Cell::Lava);
  EXPECT_EQ(u.cell({1, 2, 4}), Cell::Empty);  // unsupported lava does not spread sideways
  EXPECT_EQ(u.lava_count(), 2);
}

TEST(WorldUpdate, LavaSpreadsLaterallyOnEarth) {
  WorldState w = flat({5, 5, 3}, 1, {0, 0, 1});
  w.set_cell({2, 2, 1}, Cell::Lava);
  w.set_lava_period(1);
  const auto u = world_update(w, Embodiment::Climbing);
  EXPECT_EQ(u.lava_count(), 5);
  for (Vec3 p : {Vec3{1, 2, 1}, Vec3{3, 2, 1}, Vec3{2, 1, 1}, Vec3{2, 3, 1}})
    EXPECT_EQ(u.cell(p), Cell::Lava);
  EXPECT_EQ(u.cell({1, 1, 1}), Cell::Empty);  // one generation per spread turn
}

TEST(WorldUpdate, LavaOnLavaDoesNotSpread) {
  WorldState w = flat({3, 3, 4}, 1, {0, 0, 1});
  w.set_cell({1, 1, 1}, Cell::Lava);
  w.set_cell({1, 1, 2}, Cell::Lava);
  w.set_lava_period(1);
  const auto u = world_update(w, Embodiment::Climbing);
  EXPECT_EQ(u.cell({0, 1, 2}), Cell::Empty);
  EXPECT_EQ(u.cell({0, 1, 1}), Cell::Lava);
}

TEST(WorldUpdate, LavaRespectsPeriod) {
  WorldState w = flat({5, 1, 2}, 1, {0, 0, 1});
  w.set_cell({4, 0, 1}, Cell::Lava);
  w.set_lava_period(5);
  auto u = w;
  for (int t = 1; t <= 4; ++t) {
    u = world_update(u, Embodiment::Climbing);
    EXPECT_EQ(u.lava_count(), 1) << "turn " << t;
  }
  u = world_update(u, Embodiment::Climbing);
  EXPECT_EQ(u.turn(), 5u);
  EXPECT_EQ(u.lava_count(), 2);
}

TEST(WorldUpdate, LavaNeverEntersAgentCellAndKills) {
  WorldState w = flat({3, 1, 2}, 1, {1, 0, 1});
  w.set_cell({0, 0, 1}, Cell::Lava);
  w.set_lava_period(1);
  const auto u = world_update(w, Embodiment::Climbing);
  EXPECT_FALSE(u.alive());
  EXPECT_EQ(u.cell({1, 0, 1}), Cell::Empty);
  const auto v = world_update(u, Embodiment::Climbing);
  EXPECT_EQ(v.cell({1, 0, 1}), Cell::Empty);  // the body still blocks
  EXPECT_EQ(v.cell({2, 0, 1}), Cell::Empty);
}

TEST(WorldUpdate, DeathInAllSixDirections) {
  for (const Vec3& f : dir::kFaces) {
    WorldState w({3, 3, 3}, {1, 1, 1});
    w.set_cell(Vec3{1, 1, 1} + f, Cell::Lava);
    if (f.z != -1) w.set_cell({1, 1, 0}, Cell::Earth);
    EXPECT_FALSE(world_update(w, Embodiment::Flying).alive());
  }
}

TEST(Step, DoNothingOnlyAdvancesTurn) {
  WorldState w = flat({3, 3, 3}, 1, {1, 1, 1});
  auto s = step(w, Action::DoNothing, Embodiment::Climbing);
  EXPECT_EQ(s.turn(), 1u);
  s.set_turn(0);
  EXPECT_EQ(s, w);
}

TEST(Step, WalkOffLedgeFallsOnce) {
  WorldState w = flat({3, 1, 5}, 1, {0, 0, 3});
  w.set_cell({0, 0, 1}, Cell::Earth);
  w.set_cell({0, 0, 2}, Cell::Earth);
  const auto s = step(w, Action::MoveEast, Embodiment::Climbing);
  EXPECT_EQ(s.agent_pos(), (Vec3{1, 0, 2}));
  EXPECT_EQ(step(s, Action::DoNothing, Embodiment::Climbing).agent_pos(), (Vec3{1, 0, 1}));
}

TEST(Step, DeadAgentFrozenButLavaSpreads) {
  WorldState w = flat({4, 1, 2}, 1, {1, 0, 1});
  w.set_cell({0, 0, 1}, Cell::Lava);
  w.set_lava_period(1);
  w.kill();
  const auto s = step(w, Action::MoveEast, Embodiment::Climbing);
  EXPECT_EQ(s.agent_pos(), (Vec3{1, 0, 1}));
  EXPECT_EQ(s.turn(), 1u);
  const auto t = step(s, Action::InteractEast, Embodiment::Climbing);
  EXPECT_EQ(t.inventory(), Inventory::Empty);
  EXPECT_FALSE(t.alive());
}

TEST(Properties, RandomWalkInvariants) {
  std::mt19937_64 gen(2024);
  for (int world = 0; world < 300; ++world) {
    WorldState w = random_world(gen, world % 2 == 1);
    const Embodiment e = kAllEmbodiments[static_cast<std::size_t>(world % 3)];
    const auto actions = action_set(e);
    for (int t = 0; t < 40; ++t) {
      const Action a = actions[gen() % actions.size()];
      const WorldState next = step(w, a, e);
      // Determinism.
      ASSERT_EQ(next, step(w, a, e));
      // Block conservation: only Destroy removes a held block.
      const int before = w.earth_count() + held(w);
      const int after = next.earth_count() + held(next);
      if (a == Action::Destroy && w.alive()) {
        ASSERT_EQ(after, before - held(w));
      } else {
        ASSERT_EQ(after, before);
      }
      // Lava monotonicity.
      ASSERT_GE(next.lava_count(), w.lava_count());
      for (int z = 0; z < w.dims().height; ++z)
        for (int y = 0; y < w.dims().depth; ++y)
          for (int x = 0; x < w.dims().width; ++x)
            if (w.cell({x, y, z}) == Cell::Lava) ASSERT_EQ(next.cell({x, y, z}), Cell::Lava);
      // Agent cell stays empty; death is absorbing.
      ASSERT_EQ(next.cell(next.agent_pos()), Cell::Empty);
      if (!w.alive()) {
        ASSERT_FALSE(next.alive());
        ASSERT_EQ(next.agent_pos(), w.agent_pos());
      }
      // A supported agent never falls.
      const Vec3 below = w.agent_pos() + dir::kDown;
      if (a == Action::DoNothing && w.cell_if(below).value_or(Cell::Earth) != Cell::Empty)
        ASSERT_EQ(next.agent_pos(), w.agent_pos());
      w = next;
    }
  }
}

TEST(Properties, CountersMatchGrid) {
  std::mt19937_64 gen(5);
  for (int world = 0; world < 100; ++world) {
    WorldState w = random_world(gen, true);
    for (int t = 0; t < 20; ++t) {
      const auto actions = action_set(Embodiment::Climbing);
      w = step(w, actions[gen() % actions.size()], Embodiment::Climbing);
    }
    int earth = 0;
    int lava = 0;
    for (int z = 0; z < w.dims().height; ++z)
      for (int y = 0; y < w.dims().depth; ++y)
        for (int x = 0; x < w.dims().width; ++x) {
          earth += w.cell({x, y, z}) == Cell::Earth;
          lava += w.cell({x, y, z}) == Cell::Lava;
        }
    EXPECT_EQ(w.earth_count(), earth);
    EXPECT_EQ(w.lava_count(), lava);
  }
}

TEST(WorldState, RejectsInvalidConstruction) {
  EXPECT_THROW(WorldState({0, 1, 1}), ContractViolation);
  EXPECT_THROW(WorldState({2, 2, 2}, {2, 0, 0}), ContractViolation);
  WorldState w({2, 2, 2}, {0, 0, 0});
  EXPECT_THROW(w.set_cell({0, 0, 0}, Cell::Earth), ContractViolation);
  EXPECT_THROW(w.set_lava_period(0u), ContractViolation);
}

TEST(Snapshot, Format) {
  WorldState w = flat({3, 2, 2}, 1, {0, 1, 1});
  w.set_cell({2, 0, 1}, Cell::Lava);
  w.set_turn(7);
  EXPECT_EQ(to_snapshot(w),
            "dims 3 2 2 turn 7\n"
            "A..\n"
            "..L\n"
            "\n"
            "###\n"
            "###\n");
  w.kill();
  EXPECT_EQ(to_snapshot(w).substr(18, 3), "a..");
}

TEST(Snapshot, RoundTrip) {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 50; ++i) {
    WorldState w = random_world(gen, true);
    w.set_inventory(Inventory::Empty);
    w.set_lava_period(std::nullopt);
    w.set_turn(static_cast<std::uint32_t>(gen() % 1000));
    if (gen() % 4 == 0) w.kill();
    const WorldState back = parse_snapshot(to_snapshot(w));
    EXPECT_EQ(back, w);
  }
}

TEST(Snapshot, RejectsMalformed) {
  EXPECT_THROW(parse_snapshot(std::string("dims 2 1 1 turn 0\nA\n")), ConfigError);
  EXPECT_THROW(parse_snapshot(std::string("dims 2 1 1 turn 0\n..\n")), ConfigError);
  EXPECT_THROW(parse_snapshot(std::string("dims 2 1 1 turn 0\nAx\n")), ConfigError);
  EXPECT_THROW(parse_snapshot(std::string("size 2 1 1\nA.\n")), ConfigError);
}
