#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Experiment harness. Scenario definitions and seeded episodes live here,
// next to the estimator-quality study and the spreading-lava outcome classifier.

#include <array>
#include <cstdint>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "empower/blockworld.hpp"
#include "empower/controller.hpp"
#include "empower/empowerment.hpp"
#include "empower/errors.hpp"
#include "empower/parallel.hpp"
#include "empower/snapshot.hpp"

namespace empower {

/// Horizontal earth fill covering every (x, y) for z in [z_min, z_max].
struct EarthSlab {
  int z_min = 0;
  int z_max = 0;
  friend bool operator==(const EarthSlab&, const EarthSlab&) = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  Dims dims{3, 3, 3};
  std::vector<EarthSlab> earth_slabs;
  /// Applied after the slabs, in this order: extra earth, carved cells, lava.
  std::vector<Vec3> earth_cells;
  std::vector<Vec3> empty_cells;
  std::vector<Vec3> lava_cells;
  std::optional<std::uint32_t> lava_period;
  Vec3 agent_start{};
  Embodiment embodiment = Embodiment::Climbing;
  int horizon = 15;
  int samples = 1000;
  int turns = 1;
  std::uint64_t seed = 0;
  /// Emit a snapshot every k turns (0 = initial and final only).
  int snapshot_every = 0;
  bool counterfactuals = false;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

  void validate() const {
    auto fail = [&](const std::string& why) { throw ConfigError("scenario " + name + ": " + why); };
    if (dims.width < 1 || dims.depth < 1 || dims.height < 1) fail("dims must be positive");
    if (horizon < 1) fail("horizon must be >= 1");
    if (samples < 1) fail("samples must be >= 1");
    if (turns < 0) fail("turns must be >= 0");
    if (snapshot_every < 0) fail("snapshot_every must be >= 0");
    if (lava_period && *lava_period == 0) fail("lava_period must be positive");
    auto inside = [&](Vec3 p) {
      return p.x >= 0 && p.y >= 0 && p.z >= 0 && p.x < dims.width && p.y < dims.depth &&
             p.z < dims.height;
    };
    for (const auto& s : earth_slabs)
      if (s.z_min < 0 || s.z_max >= dims.height || s.z_min > s.z_max) fail("bad earth slab");
    for (const auto* cells : {&earth_cells, &empty_cells, &lava_cells})
      for (Vec3 p : *cells)
        if (!inside(p)) fail("cell outside the world");
    if (!inside(agent_start)) fail("agent start outside the world");
    if (initial_cell(agent_start) != Cell::Empty) fail("agent start cell is not empty");
  }

  /// Content of a cell in the initial world, before the agent is placed.
  Cell initial_cell(Vec3 p) const {
    Cell c = Cell::Empty;
    for (const auto& s : earth_slabs)
      if (p.z >= s.z_min && p.z <= s.z_max) c = Cell::Earth;
    for (Vec3 q : earth_cells)
      if (q == p) c = Cell::Earth;
    for (Vec3 q : empty_cells)
      if (q == p) c = Cell::Empty;
    for (Vec3 q : lava_cells)
      if (q == p) c = Cell::Lava;
    return c;
  }

  WorldState initial_world() const {
    validate();
    WorldState w(dims, agent_start);
    for (const auto& s : earth_slabs)
      for (int z = s.z_min; z <= s.z_max; ++z)
        for (int y = 0; y < dims.depth; ++y)
          for (int x = 0; x < dims.width; ++x) w.set_cell({x, y, z}, Cell::Earth);
    for (Vec3 p : earth_cells) w.set_cell(p, Cell::Earth);
    for (Vec3 p : empty_cells) w.set_cell(p, Cell::Empty);
    for (Vec3 p : lava_cells) w.set_cell(p, Cell::Lava);
    w.set_lava_period(lava_period);
    return w;
  }
};

// ---------------------------------------------------------------------------
// Built-in experiments. x runs east, y north, z up.
// ---------------------------------------------------------------------------

/// 3 x 3 x 8 world, bottom five layers earth, agent in the middle of layer 6.
inline ScenarioConfig build_experiment1(Embodiment e, std::uint64_t seed) {
  ScenarioConfig c;
  c.name = std::string("exp1-") + std::string(e == Embodiment::Climbing      ? "climb"
                                              : e == Embodiment::NonClimbing ? "noclimb"
                                                                             : "fly");
  c.dims = {3, 3, 8};
  c.earth_slabs = {{0, 4}};
  c.agent_start = {1, 1, 5};
  c.embodiment = e;
  c.horizon = 15;
  c.samples = 1000;
  c.turns = 1000;
  c.seed = seed;
  return c;
}

namespace exp2 {
inline constexpr int kLavaRowX = 2;
/// Cells with x above the lava row form the larger region.
inline constexpr int kFarRegionMinX = 3;
inline constexpr int kBridgeTurns = 50;
}  // namespace exp2

/// 6 x 5 x 5 world, three earth layers, a lava row at x = 2 in the top earth
/// layer splitting a 2-row region from a 3-row region; agent on the smaller
/// side's surface corner.
inline ScenarioConfig build_experiment2(std::uint64_t seed) {
  ScenarioConfig c;
  c.name = "exp2";
  c.dims = {6, 5, 5};
  c.earth_slabs = {{0, 2}};
  for (int y = 0; y < 5; ++y) c.lava_cells.push_back({exp2::kLavaRowX, y, 2});
  c.lava_period = 1;
  c.agent_start = {0, 0, 3};
  c.embodiment = Embodiment::Climbing;
  c.horizon = 15;
  c.samples = 1000;
  c.turns = exp2::kBridgeTurns;
  c.seed = seed;
  return c;
}

namespace exp3 {
/// First empty layer above the original earth; lava spreads across it.
inline constexpr int kSurfaceZ = 4;
/// An island's non-lava patch at surface level has at most this many cells.
inline constexpr int kIslandMaxCells = 4;
/// A dammed region keeps at least this many non-lava surface cells.
inline constexpr int kDamMinCells = 5;
}  // namespace exp3

/// 8 x 3 x 7 world, bottom four layers earth, agent and a lava seed in
/// opposite top corners, lava spreading every 5 turns, 300 turns.
inline ScenarioConfig build_experiment3(std::uint64_t seed) {
  ScenarioConfig c;
  c.name = "exp3";
  c.dims = {8, 3, 7};
  c.earth_slabs = {{0, 3}};
  c.lava_cells = {{7, 2, exp3::kSurfaceZ}};
  c.lava_period = 5;
  c.agent_start = {0, 0, exp3::kSurfaceZ};
  c.embodiment = Embodiment::Climbing;
  c.horizon = 15;
  c.samples = 1000;
  c.turns = 300;
  c.seed = seed;
  return c;
}

/// Resolves exp1-climb, exp1-noclimb, exp1-fly, exp2, exp3.
inline std::optional<ScenarioConfig> builtin_scenario(std::string_view name, std::uint64_t seed) {
  if (name == "exp1-climb") return build_experiment1(Embodiment::Climbing, seed);
  if (name == "exp1-noclimb") return build_experiment1(Embodiment::NonClimbing, seed);
  if (name == "exp1-fly") return build_experiment1(Embodiment::Flying, seed);
  if (name == "exp2") return build_experiment2(seed);
  if (name == "exp3") return build_experiment3(seed);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Episodes
// ---------------------------------------------------------------------------

/// One decision with the pre-decision state and the estimates behind it.
struct TurnRecord {
  std::uint32_t turn = 0;
  Vec3 position{};
  bool alive = true;
  Action chosen = Action::DoNothing;
  /// Reachable counts of every successor, in `action_set` order.
  std::vector<std::uint64_t> action_counts;
  /// Estimates at the current position for Climbing, NonClimbing, Flying.
  std::optional<std::array<std::uint64_t, 3>> counterfactual;

  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

struct Snapshot {
  std::uint32_t turn = 0;
  std::string text;
};

struct EpisodeResult {
  std::vector<TurnRecord> trace;
  WorldState final_world;
  /// Taken every `snapshot_every` turns plus the final state, deduplicated.
  std::vector<Snapshot> snapshots;
};

/// Estimates for all three embodiments standing where the agent stands now.
inline std::array<std::uint64_t, 3> counterfactual_counts(const WorldState& w, int n, int m,
                                                          std::uint64_t seed,
                                                          Parallelism par = {}) {
  std::array<std::uint64_t, 3> out{};
  parallel_for(kAllEmbodiments.size(), par, [&](std::size_t i) {
    out[i] = sparse_empowerment(w, kAllEmbodiments[i], n, m,
                                StreamKey{seed, w.turn(), i, StreamPurpose::Counterfactual})
                 .reachable_count;
  });
  return out;
}

/// Runs `cfg.turns` greedy decisions from the initial world.
inline EpisodeResult run_episode(const ScenarioConfig& cfg, Parallelism par = {}) {
  EpisodeResult result;
  WorldState w = cfg.initial_world();
  result.snapshots.push_back({w.turn(), to_snapshot(w)});
  result.trace.reserve(static_cast<std::size_t>(cfg.turns));
  for (int t = 0; t < cfg.turns; ++t) {
    TurnRecord rec;
    rec.turn = w.turn();
    rec.position = w.agent_pos();
    rec.alive = w.alive();
    if (cfg.counterfactuals) {
      rec.counterfactual = counterfactual_counts(w, cfg.horizon, cfg.samples, cfg.seed, par);
    }
    Decision d = choose_action(w, cfg.embodiment, cfg.horizon, cfg.samples, cfg.seed, par);
    rec.chosen = d.chosen;
    rec.action_counts.reserve(d.evaluations.size());
    for (const auto& ev : d.evaluations) rec.action_counts.push_back(ev.estimate.reachable_count);
    result.trace.push_back(std::move(rec));

    detail::step_in_place(w, d.chosen, cfg.embodiment);
    if (cfg.snapshot_every > 0 && (t + 1) % cfg.snapshot_every == 0) {
      result.snapshots.push_back({w.turn(), to_snapshot(w)});
    }
  }
  if (result.snapshots.back().turn != w.turn()) result.snapshots.push_back({w.turn(), to_snapshot(w)});
  result.final_world = std::move(w);
  return result;
}

// ---------------------------------------------------------------------------
// Estimator study
// ---------------------------------------------------------------------------

struct EstimatorRow {
  int m = 1;
  /// Monte-Carlo discovery estimate for each benchmark distribution.
  std::array<double, 5> estimate{};
  /// Analytic model for each benchmark distribution.
  std::array<double, 5> model{};
};

/// m = 1..100 step 1, then 110..1000 step 10.
inline std::vector<int> default_sample_grid() {
  std::vector<int> grid;
  for (int m = 1; m <= 100; ++m) grid.push_back(m);
  for (int m = 110; m <= 1000; m += 10) grid.push_back(m);
  return grid;
}

inline std::vector<EstimatorRow> run_estimator_study(const std::vector<int>& grid, int reps,
                                                     std::uint64_t seed, Parallelism par = {}) {
  if (grid.empty()) throw ContractViolation("run_estimator_study: empty sample grid");
  const auto dists = benchmark_distributions();
  std::vector<EstimatorRow> rows(grid.size());
  parallel_for(grid.size(), par, [&](std::size_t i) {
    EstimatorRow& row = rows[i];
    row.m = grid[i];
    for (std::size_t k = 0; k < dists.size(); ++k) {
      row.estimate[k] = mc_discovery_estimate(dists[k], row.m, reps, hash_combine(seed, k));
      row.model[k] = approximation_model(dists[k], row.m);
    }
  });
  return rows;
}

// ---------------------------------------------------------------------------
// Outcome classification for the spreading-lava world
// ---------------------------------------------------------------------------

enum class Outcome { Island, Cave, Dam, Other };

constexpr std::string_view to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Island: return "Island";
    case Outcome::Cave: return "Cave";
    case Outcome::Dam: return "Dam";
    case Outcome::Other: return "Other";
  }
  return "?";
}

namespace detail {

/// Size of the 4-connected non-lava patch of layer start.z containing `start`.
inline int surface_region(const WorldState& w, Vec3 start) {
  const Dims d = w.dims();
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(d.width * d.depth), 0);
  std::queue<Vec3> open;
  open.push(start);
  visited[static_cast<std::size_t>(start.x + d.width * start.y)] = 1;
  int size = 0;
  while (!open.empty()) {
    const Vec3 p = open.front();
    open.pop();
    ++size;
    for (const Vec3& f : dir::kLateral) {
      const Vec3 q = p + f;
      if (!w.in_bounds(q)) continue;
      if (w.cell(q) == Cell::Lava) continue;
      auto& v = visited[static_cast<std::size_t>(q.x + d.width * q.y)];
      if (!v) {
        v = 1;
        open.push(q);
      }
    }
  }
  return size;
}

}  // namespace detail

/// Labels a finished spreading-lava episode.
///
/// - Cave: alive, below the surface layer, with earth somewhere above it in
///   its column.
/// - Island: alive, standing above the surface layer on an earth column whose
///   surface-level patch of non-lava cells has at most kIslandMaxCells cells.
/// - Dam: alive at or above the surface layer, and the non-lava patch around
///   its column at surface level keeps at least kDamMinCells cells.
/// - Other: anything else, including death.
inline Outcome classify_outcome_exp3(const WorldState& w) {
  using namespace exp3;
  if (!w.alive()) return Outcome::Other;
  const Vec3 a = w.agent_pos();
  if (a.z < kSurfaceZ) {
    for (int z = a.z + 1; z < w.dims().height; ++z)
      if (w.cell({a.x, a.y, z}) == Cell::Earth) return Outcome::Cave;
    return Outcome::Other;
  }
  const Vec3 column_at_surface{a.x, a.y, kSurfaceZ};
  if (w.cell(column_at_surface) == Cell::Lava) return Outcome::Other;
  const int patch = detail::surface_region(w, column_at_surface);
  if (a.z > kSurfaceZ) {
    bool on_earth = true;
    for (int z = kSurfaceZ; z < a.z; ++z) on_earth = on_earth && w.cell({a.x, a.y, z}) == Cell::Earth;
    if (on_earth && patch <= kIslandMaxCells) return Outcome::Island;
  }
  if (patch >= kDamMinCells) return Outcome::Dam;
  return Outcome::Other;
}

}  // namespace empower
