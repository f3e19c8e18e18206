#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Deterministic voxel block world with its embodiment-specific action sets.
// A turn applies the action, gravity, lava spread and the death check in order.
//
// Axes: x grows east, y grows north, z grows up. The agent occupies an Empty
// cell; lava and earth never share a cell with it.

#include <array>
#include <compare>
#include <cstring>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "empower/errors.hpp"

namespace empower {

enum class Cell : std::uint8_t { Empty = 0, Earth = 1, Lava = 2 };

enum class Inventory : std::uint8_t { Empty = 0, HoldsEarth = 1 };

enum class Embodiment : std::uint8_t { Climbing = 0, NonClimbing = 1, Flying = 2 };

inline constexpr std::array<Embodiment, 3> kAllEmbodiments = {
    Embodiment::Climbing, Embodiment::NonClimbing, Embodiment::Flying};

enum class Action : std::uint8_t {
  MoveNorth,
  MoveEast,
  MoveSouth,
  MoveWest,
  InteractUp,
  InteractDown,
  InteractNorth,
  InteractSouth,
  InteractEast,
  InteractWest,
  DoNothing,
  Destroy,
  MoveUp,
  MoveDown,
};

struct Vec3 {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr auto operator<=>(const Vec3&, const Vec3&) = default;
};

struct Dims {
  int width = 1;   // x extent
  int depth = 1;   // y extent
  int height = 1;  // z extent

  constexpr int volume() const noexcept { return width * depth * height; }
  friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

namespace dir {
inline constexpr Vec3 kNorth{0, 1, 0};
inline constexpr Vec3 kSouth{0, -1, 0};
inline constexpr Vec3 kEast{1, 0, 0};
inline constexpr Vec3 kWest{-1, 0, 0};
inline constexpr Vec3 kUp{0, 0, 1};
inline constexpr Vec3 kDown{0, 0, -1};
inline constexpr std::array<Vec3, 6> kFaces = {kNorth, kSouth, kEast, kWest, kUp, kDown};
inline constexpr std::array<Vec3, 4> kLateral = {kNorth, kSouth, kEast, kWest};
}  // namespace dir

constexpr std::string_view to_string(Action a) noexcept {
  switch (a) {
    case Action::MoveNorth: return "MoveNorth";
    case Action::MoveEast: return "MoveEast";
    case Action::MoveSouth: return "MoveSouth";
    case Action::MoveWest: return "MoveWest";
    case Action::InteractUp: return "InteractUp";
    case Action::InteractDown: return "InteractDown";
    case Action::InteractNorth: return "InteractNorth";
    case Action::InteractSouth: return "InteractSouth";
    case Action::InteractEast: return "InteractEast";
    case Action::InteractWest: return "InteractWest";
    case Action::DoNothing: return "DoNothing";
    case Action::Destroy: return "Destroy";
    case Action::MoveUp: return "MoveUp";
    case Action::MoveDown: return "MoveDown";
  }
  return "?";
}

constexpr std::string_view to_string(Embodiment e) noexcept {
  switch (e) {
    case Embodiment::Climbing: return "climbing";
    case Embodiment::NonClimbing: return "nonclimbing";
    case Embodiment::Flying: return "flying";
  }
  return "?";
}

inline std::optional<Embodiment> parse_embodiment(std::string_view s) noexcept {
  for (Embodiment e : kAllEmbodiments)
    if (to_string(e) == s) return e;
  return std::nullopt;
}

namespace detail {
inline constexpr std::array<Action, 14> kActionOrder = {
    Action::MoveNorth,     Action::MoveEast,      Action::MoveSouth,    Action::MoveWest,
    Action::InteractUp,    Action::InteractDown,  Action::InteractNorth, Action::InteractSouth,
    Action::InteractEast,  Action::InteractWest,  Action::DoNothing,    Action::Destroy,
    Action::MoveUp,        Action::MoveDown};
}  // namespace detail

/// The actuator alphabet of an embodiment, in fixed order: four cardinal
/// moves, six interactions (up, down, north, south, east, west), DoNothing,
/// Destroy, and for Flying additionally MoveUp, MoveDown.
constexpr std::span<const Action> action_set(Embodiment e) noexcept {
  return {detail::kActionOrder.data(), e == Embodiment::Flying ? 14u : 12u};
}

constexpr bool in_action_set(Action a, Embodiment e) noexcept {
  return e == Embodiment::Flying || (a != Action::MoveUp && a != Action::MoveDown);
}

/// Full world state: voxel grid, agent body, inventory, liveness, turn clock.
///
/// Storage is a flat array padded by one layer of wall cells on every side, so
/// neighbour lookups on the transition path are plain index offsets. Flat
/// indices (`index`, `agent_index`) refer to that padded array.
class WorldState {
 public:
  WorldState() : WorldState(Dims{}) {}
  explicit WorldState(Dims dims, Vec3 agent = {}) : dims_(dims) {
    if (dims.width < 1 || dims.depth < 1 || dims.height < 1) {
      throw ContractViolation("WorldState: dimensions must be positive");
    }
    if (!in_bounds(agent)) throw ContractViolation("WorldState: agent outside world");
    stride_y_ = dims.width + 2;
    stride_z_ = stride_y_ * (dims.depth + 2);
    grid_.assign(static_cast<std::size_t>(stride_z_ * (dims.height + 2)), kWall);
    for (int z = 0; z < dims.height; ++z)
      for (int y = 0; y < dims.depth; ++y)
        for (int x = 0; x < dims.width; ++x) grid_[slot({x, y, z})] = Cell::Empty;
    agent_ = index(agent);
  }

  const Dims& dims() const noexcept { return dims_; }

  constexpr bool in_bounds(Vec3 p) const noexcept {
    return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < dims_.width && p.y < dims_.depth &&
           p.z < dims_.height;
  }
  int index(Vec3 p) const noexcept { return (p.x + 1) + stride_y_ * (p.y + 1) + stride_z_ * (p.z + 1); }
  Vec3 position(int idx) const noexcept {
    return {idx % stride_y_ - 1, (idx % stride_z_) / stride_y_ - 1, idx / stride_z_ - 1};
  }
  /// Size of the flat index space (padding included).
  int index_space() const noexcept { return static_cast<int>(grid_.size()); }
  int stride_y() const noexcept { return stride_y_; }
  int stride_z() const noexcept { return stride_z_; }

  Cell cell(Vec3 p) const noexcept { return grid_[slot(p)]; }
  /// Out-of-bounds reads return nullopt.
  std::optional<Cell> cell_if(Vec3 p) const noexcept {
    if (!in_bounds(p)) return std::nullopt;
    return cell(p);
  }

  void set_cell(Vec3 p, Cell c) {
    if (!in_bounds(p)) throw ContractViolation("set_cell: position outside world");
    if (index(p) == agent_ && c != Cell::Empty) {
      throw ContractViolation("set_cell: agent cell must stay empty");
    }
    if (c != Cell::Empty && c != Cell::Earth && c != Cell::Lava) {
      throw ContractViolation("set_cell: unknown cell value");
    }
    raw_set(index(p), c);
  }

  Vec3 agent_pos() const noexcept { return position(agent_); }
  int agent_index() const noexcept { return agent_; }
  void set_agent_pos(Vec3 p) {
    if (!in_bounds(p)) throw ContractViolation("set_agent_pos: outside world");
    if (cell(p) != Cell::Empty) throw ContractViolation("set_agent_pos: cell not empty");
    agent_ = index(p);
  }

  Inventory inventory() const noexcept { return inventory_; }
  void set_inventory(Inventory inv) noexcept { inventory_ = inv; }

  bool alive() const noexcept { return alive_; }
  /// Death is permanent.
  void kill() noexcept { alive_ = false; }

  std::uint32_t turn() const noexcept { return turn_; }
  void set_turn(std::uint32_t t) noexcept { turn_ = t; }

  /// Lava spreads on turns divisible by the period; nullopt disables spreading.
  std::optional<std::uint32_t> lava_period() const noexcept {
    if (lava_period_ == 0) return std::nullopt;
    return lava_period_;
  }
  void set_lava_period(std::optional<std::uint32_t> period) {
    if (period && *period == 0) throw ContractViolation("lava period must be positive");
    lava_period_ = period.value_or(0);
  }

  int lava_count() const noexcept { return lava_count_; }
  int earth_count() const noexcept { return earth_count_; }

  friend bool operator==(const WorldState& a, const WorldState& b) noexcept {
    return a.dims_ == b.dims_ && a.agent_ == b.agent_ && a.inventory_ == b.inventory_ &&
           a.alive_ == b.alive_ && a.turn_ == b.turn_ && a.lava_period_ == b.lava_period_ &&
           a.grid_ == b.grid_;
  }

  // --- Transition internals. These mutate in place and skip precondition checks;
  // --- use the free functions below unless you are on a hot rollout path.

  /// Padding value; never Empty, so nothing can enter it.
  static constexpr Cell kWall = static_cast<Cell>(3);

  void raw_set(int idx, Cell c) noexcept {
    Cell& cur = grid_[static_cast<std::size_t>(idx)];
    lava_count_ += (c == Cell::Lava) - (cur == Cell::Lava);
    earth_count_ += (c == Cell::Earth) - (cur == Cell::Earth);
    cur = c;
    lava_settled_ = false;
  }
  /// Earth -> Empty by the agent. Only a hole under or beside lava can give
  /// settled lava somewhere new to go.
  void raw_take(int idx) noexcept {
    Cell* g = grid_.data();
    g[idx] = Cell::Empty;
    --earth_count_;
    if (lava_settled_ &&
        (g[idx + stride_z_] == Cell::Lava || g[idx + 1] == Cell::Lava ||
         g[idx - 1] == Cell::Lava || g[idx + stride_y_] == Cell::Lava ||
         g[idx - stride_y_] == Cell::Lava)) {
      lava_settled_ = false;
    }
  }
  /// Empty -> Earth by the agent. Filling a cell never opens a path for
  /// settled lava.
  void raw_place(int idx) noexcept {
    grid_[static_cast<std::size_t>(idx)] = Cell::Earth;
    ++earth_count_;
  }
  Cell raw_get(int idx) const noexcept { return grid_[static_cast<std::size_t>(idx)]; }
  void raw_move_agent(int idx) noexcept { agent_ = idx; }
  void raw_tick() noexcept { ++turn_; }
  bool lava_settled() const noexcept { return lava_settled_; }
  void mark_lava_settled() noexcept { lava_settled_ = true; }
  Cell* raw_cells() noexcept { return grid_.data(); }

 private:
  std::size_t slot(Vec3 p) const noexcept { return static_cast<std::size_t>(index(p)); }

  Dims dims_;
  int stride_y_ = 3;
  int stride_z_ = 9;
  std::vector<Cell> grid_;
  int agent_ = 0;
  Inventory inventory_ = Inventory::Empty;
  bool alive_ = true;
  std::uint32_t turn_ = 0;
  std::uint32_t lava_period_ = 0;
  int lava_count_ = 0;
  int earth_count_ = 0;
  // True when the last spread pass found no candidate cell (ignoring the agent)
  // and the grid has not changed since; lets rollouts skip the scan.
  bool lava_settled_ = false;
};

namespace detail {

/// Flat-index offset of an action's direction; 0 for non-directional actions.
inline int offset_of(const WorldState& w, Action a) noexcept {
  switch (a) {
    case Action::MoveNorth:
    case Action::InteractNorth: return w.stride_y();
    case Action::MoveSouth:
    case Action::InteractSouth: return -w.stride_y();
    case Action::MoveEast:
    case Action::InteractEast: return 1;
    case Action::MoveWest:
    case Action::InteractWest: return -1;
    case Action::MoveUp:
    case Action::InteractUp: return w.stride_z();
    case Action::MoveDown:
    case Action::InteractDown: return -w.stride_z();
    default: return 0;
  }
}

inline void move_in_place(WorldState& w, int offset, bool lateral, Embodiment e) noexcept {
  const int target = w.agent_index() + offset;
  const Cell c = w.raw_get(target);
  if (c == Cell::Empty) {
    w.raw_move_agent(target);
    return;
  }
  if (e != Embodiment::Climbing || !lateral || c == WorldState::kWall) return;
  const int above = target + w.stride_z();
  if (w.raw_get(above) == Cell::Empty) w.raw_move_agent(above);
}

inline void interact_in_place(WorldState& w, int offset) noexcept {
  const int target = w.agent_index() + offset;
  const Cell c = w.raw_get(target);
  if (w.inventory() == Inventory::Empty) {
    if (c == Cell::Earth) {
      w.raw_take(target);
      w.set_inventory(Inventory::HoldsEarth);
    }
  } else if (c == Cell::Empty) {
    w.raw_place(target);
    w.set_inventory(Inventory::Empty);
  }
}

inline void apply_action_in_place(WorldState& w, Action a, Embodiment e) noexcept {
  if (!w.alive()) return;
  switch (a) {
    case Action::MoveNorth:
    case Action::MoveEast:
    case Action::MoveSouth:
    case Action::MoveWest: move_in_place(w, offset_of(w, a), true, e); break;
    case Action::MoveUp:
    case Action::MoveDown: move_in_place(w, offset_of(w, a), false, e); break;
    case Action::InteractUp:
    case Action::InteractDown:
    case Action::InteractNorth:
    case Action::InteractSouth:
    case Action::InteractEast:
    case Action::InteractWest: interact_in_place(w, offset_of(w, a)); break;
    case Action::DoNothing: break;
    case Action::Destroy: w.set_inventory(Inventory::Empty); break;
  }
}

// Marks cells that turn to lava this spread tick, so the pass can tell fresh
// lava from the pre-update set.
inline constexpr Cell kFreshLava = static_cast<Cell>(4);

inline bool open_for_lava(Cell c) noexcept { return c == Cell::Empty || c == kFreshLava; }

/// One synchronous spread generation computed from the pre-update lava set.
inline void spread_lava_in_place(WorldState& w) noexcept {
  if (w.lava_count() == 0 || w.lava_settled()) return;
  const int sy = w.stride_y();
  const int sz = w.stride_z();
  const int agent = w.agent_index();
  const int space = w.index_space();
  Cell* g = w.raw_cells();
  bool any_candidate = false;
  int fresh[64];
  int fresh_count = 0;
  bool overflow = false;

  auto mark = [&](int idx) {
    any_candidate = true;
    if (idx == agent || g[idx] == kFreshLava) return;
    g[idx] = kFreshLava;
    if (fresh_count < 64) {
      fresh[fresh_count++] = idx;
    } else {
      overflow = true;
    }
  };

  int seen = 0;
  const int total = w.lava_count();
  const auto* const end = reinterpret_cast<const unsigned char*>(g) + space;
  for (const auto* hit = reinterpret_cast<const unsigned char*>(g);
       seen < total &&
       (hit = static_cast<const unsigned char*>(std::memchr(hit, static_cast<int>(Cell::Lava),
                                                            static_cast<std::size_t>(end - hit))));
       ++hit) {
    const int idx = static_cast<int>(hit - reinterpret_cast<const unsigned char*>(g));
    ++seen;
    const Cell below = g[idx - sz];
    if (open_for_lava(below)) {
      mark(idx - sz);
      continue;
    }
    // Earth and the world floor support lava; lava on lava stays put.
    if (below == Cell::Lava) continue;
    if (open_for_lava(g[idx + sy])) mark(idx + sy);
    if (open_for_lava(g[idx - sy])) mark(idx - sy);
    if (open_for_lava(g[idx + 1])) mark(idx + 1);
    if (open_for_lava(g[idx - 1])) mark(idx - 1);
  }

  auto convert = [&](int idx) {
    g[idx] = Cell::Empty;  // keep the counters honest
    w.raw_set(idx, Cell::Lava);
  };
  if (overflow) {
    for (int idx = 0; idx < space; ++idx)
      if (g[idx] == kFreshLava) convert(idx);
  } else {
    for (int i = 0; i < fresh_count; ++i) convert(fresh[i]);
  }
  if (!any_candidate) w.mark_lava_settled();
}

inline bool touches_lava(const WorldState& w) noexcept {
  if (w.lava_count() == 0) return false;
  const int p = w.agent_index();
  const int sy = w.stride_y();
  const int sz = w.stride_z();
  return w.raw_get(p + 1) == Cell::Lava || w.raw_get(p - 1) == Cell::Lava ||
         w.raw_get(p + sy) == Cell::Lava || w.raw_get(p - sy) == Cell::Lava ||
         w.raw_get(p + sz) == Cell::Lava || w.raw_get(p - sz) == Cell::Lava;
}

inline void world_update_in_place(WorldState& w, Embodiment e) noexcept {
  w.raw_tick();
  if (w.alive() && e != Embodiment::Flying) {
    const int below = w.agent_index() - w.stride_z();
    if (w.raw_get(below) == Cell::Empty) w.raw_move_agent(below);
  }
  if (w.lava_count() > 0 && !w.lava_settled()) {
    if (const auto period = w.lava_period(); period && w.turn() % *period == 0) {
      spread_lava_in_place(w);
    }
  }
  if (w.alive() && touches_lava(w)) w.kill();
}

/// One full turn in place, without precondition checks.
inline void step_in_place(WorldState& w, Action a, Embodiment e) noexcept {
  apply_action_in_place(w, a, e);
  world_update_in_place(w, e);
}

inline void require_action(Action a, Embodiment e) {
  if (!in_action_set(a, e)) {
    throw ContractViolation(std::string("action ") + std::string(to_string(a)) +
                            " is not available to a " + std::string(to_string(e)) +
                            " agent");
  }
}

}  // namespace detail

/// Applies the agent's action only (no gravity, lava, or clock).
inline WorldState apply_action(WorldState w, Action a, Embodiment e) {
  detail::require_action(a, e);
  detail::apply_action_in_place(w, a, e);
  return w;
}

/// Advances the clock, then applies gravity, lava spread (on period turns), and
/// the lava-adjacency death check. Gravity depends on the embodiment: flying
/// agents do not fall.
inline WorldState world_update(WorldState w, Embodiment e) {
  detail::world_update_in_place(w, e);
  return w;
}

/// world_update(apply_action(w, a, e), e).
inline WorldState step(WorldState w, Action a, Embodiment e) {
  detail::require_action(a, e);
  detail::step_in_place(w, a, e);
  return w;
}

}  // namespace empower
