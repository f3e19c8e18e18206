#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// n-step empowerment of a block-world state under the location sensor.
//
// The world is deterministic, so empowerment is the log of the number of
// distinct end locations reachable by open-loop action sequences of length n.
// `exact_empowerment` enumerates every sequence; `sparse_empowerment` draws m
// uniform random sequences and counts what it finds, which can only
// underestimate. The estimator-quality helpers (`mc_discovery_estimate`,
// `approximation_model`) study that bias on abstract outcome distributions.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "empower/blockworld.hpp"
#include "empower/errors.hpp"
#include "empower/info_theory.hpp"
#include "empower/parallel.hpp"
#include "empower/rng.hpp"

namespace empower {

namespace config {
inline constexpr std::uint64_t kDefaultEnumerationBudget = 2'000'000;
}  // namespace config

/// The agent's end-of-sequence sensor: its location only.
struct SensorReading {
  Vec3 location;
  friend constexpr bool operator==(const SensorReading&, const SensorReading&) = default;
};

struct EmpowermentEstimate {
  std::uint64_t reachable_count = 1;
  double nats = 0.0;
  int horizon = 1;
  /// Number of sampled sequences; nullopt for exhaustive enumeration.
  std::optional<int> samples;

  static EmpowermentEstimate from_count(std::uint64_t count, int horizon,
                                        std::optional<int> samples) {
    return {count, std::log(static_cast<double>(count)), horizon, samples};
  }
};

/// Runs an open-loop action sequence and reports where the agent ends up
/// (alive or dead).
inline SensorReading rollout(const WorldState& w, std::span<const Action> seq, Embodiment e) {
  for (Action a : seq) detail::require_action(a, e);
  WorldState s = w;
  for (Action a : seq) {
    if (!s.alive()) break;  // a dead body never moves again
    detail::step_in_place(s, a, e);
  }
  return {s.agent_pos()};
}

namespace detail {

inline std::uint64_t sequence_count(std::size_t alphabet, int n, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget / alphabet) {
      throw BudgetExceeded("exhaustive enumeration of " + std::to_string(alphabet) + "^" +
                           std::to_string(n) + " sequences exceeds the budget of " +
                           std::to_string(budget) + "; use sparse sampling instead");
    }
    total *= alphabet;
  }
  if (total > budget) throw BudgetExceeded("enumeration budget exceeded");
  return total;
}

inline void enumerate_rec(std::vector<WorldState>& level, int depth, int n, Embodiment e,
                          std::span<const Action> actions, std::vector<Vec3>& out) {
  if (depth == n) {
    out.push_back(level[static_cast<std::size_t>(depth)].agent_pos());
    return;
  }
  for (Action a : actions) {
    WorldState& next = level[static_cast<std::size_t>(depth) + 1];
    next = level[static_cast<std::size_t>(depth)];
    step_in_place(next, a, e);
    enumerate_rec(level, depth + 1, n, e, actions, out);
  }
}

}  // namespace detail

/// End location of every length-n sequence, indexed in mixed radix with the
/// first action most significant and digits in `action_set(e)` order.
inline std::vector<Vec3> end_locations_by_sequence(
    const WorldState& w, Embodiment e, int n,
    std::uint64_t budget = config::kDefaultEnumerationBudget) {
  if (n < 0) throw ContractViolation("horizon must be non-negative");
  const auto actions = action_set(e);
  const std::uint64_t total = detail::sequence_count(actions.size(), n, budget);
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<WorldState> level(static_cast<std::size_t>(n) + 1, w);
  detail::enumerate_rec(level, 0, n, e, actions, out);
  return out;
}

/// The deterministic channel sequence index -> end location (columns in
/// first-seen order).
inline info::Channel sequence_location_channel(
    const WorldState& w, Embodiment e, int n,
    std::uint64_t budget = config::kDefaultEnumerationBudget) {
  const auto ends = end_locations_by_sequence(w, e, n, budget);
  std::vector<int> column(static_cast<std::size_t>(w.index_space()), -1);
  std::vector<std::size_t> out_of(ends.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    int& c = column[static_cast<std::size_t>(w.index(ends[i]))];
    if (c < 0) c = static_cast<int>(next++);
    out_of[i] = static_cast<std::size_t>(c);
  }
  return info::Channel::deterministic(out_of, next);
}

/// ln |S*| over all |A|^n sequences. Throws BudgetExceeded past `budget`.
inline EmpowermentEstimate exact_empowerment(
    const WorldState& w, Embodiment e, int n,
    std::uint64_t budget = config::kDefaultEnumerationBudget) {
  if (n < 1) throw ContractViolation("exact_empowerment: horizon must be >= 1");
  const auto ends = end_locations_by_sequence(w, e, n, budget);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(w.index_space()), 0);
  std::uint64_t distinct = 0;
  for (const Vec3& p : ends) {
    auto& s = seen[static_cast<std::size_t>(w.index(p))];
    distinct += s == 0;
    s = 1;
  }
  return EmpowermentEstimate::from_count(distinct, n, std::nullopt);
}

namespace detail {

/// Marks the end locations of samples [begin, end) in `seen`.
inline void sample_end_locations(const WorldState& w, Embodiment e, int n, StreamKey key,
                                 std::size_t begin, std::size_t end,
                                 std::vector<std::uint8_t>& seen) {
  const auto actions = action_set(e);
  const auto k = static_cast<std::uint32_t>(actions.size());
  const std::uint64_t base = key.base();
  thread_local WorldState scratch;
  for (std::size_t i = begin; i < end; ++i) {
    scratch = w;
    SplitMix64 rng(hash_combine(base, i));
    std::uint64_t word = 0;
    for (int t = 0; t < n && scratch.alive(); ++t) {
      if ((t & 1) == 0) word = rng();
      const auto half = static_cast<std::uint32_t>(word >> ((t & 1) * 32));
      step_in_place(scratch, actions[bounded(half, k)], e);
    }
    seen[static_cast<std::size_t>(scratch.agent_index())] = 1;
  }
}

}  // namespace detail

/// Sparse-sampling estimate from m i.i.d. uniform length-n sequences.
///
/// Sample i draws its actions from the stream seeded by `key.sample_seed(i)`,
/// so the result depends only on (w, e, n, m, key) and never on `par`.
inline EmpowermentEstimate sparse_empowerment(const WorldState& w, Embodiment e, int n, int m,
                                              StreamKey key, Parallelism par = {}) {
  if (n < 1 || m < 1) throw ContractViolation("sparse_empowerment: need n >= 1 and m >= 1");
  const auto volume = static_cast<std::size_t>(w.index_space());
  const auto samples = static_cast<std::size_t>(m);
  const std::size_t chunks = std::min<std::size_t>(std::max(1u, par.threads), samples);
  std::vector<std::vector<std::uint8_t>> seen(chunks, std::vector<std::uint8_t>(volume, 0));
  parallel_for(chunks, {static_cast<unsigned>(chunks)}, [&](std::size_t c) {
    detail::sample_end_locations(w, e, n, key, samples * c / chunks,
                                 samples * (c + 1) / chunks, seen[c]);
  });
  std::uint64_t distinct = 0;
  for (std::size_t cell = 0; cell < volume; ++cell) {
    bool hit = false;
    for (const auto& s : seen) hit = hit || s[cell] != 0;
    distinct += hit;
  }
  return EmpowermentEstimate::from_count(distinct, n, m);
}

namespace detail {

inline double unit_double(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Mean over `reps` repetitions of ln(#distinct outcomes among m draws from p).
/// Repetition r uses the stream seeded by hash(seed, r).
inline double mc_discovery_estimate(const info::Distribution& p, int m, int reps,
                                    std::uint64_t seed) {
  if (m < 1 || reps < 1) throw ContractViolation("mc_discovery_estimate: need m, reps >= 1");
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) cdf[i] = (acc += p[i]);
  cdf.back() = 1.0;

  const StreamKey key{seed, 0, static_cast<std::uint64_t>(m), StreamPurpose::Discovery};
  const std::uint64_t base = key.base();
  std::vector<std::uint8_t> seen(p.size());
  double total = 0.0;
  for (int r = 0; r < reps; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    SplitMix64 rng(hash_combine(base, static_cast<std::uint64_t>(r)));
    std::size_t distinct = 0;
    for (int i = 0; i < m; ++i) {
      const double u = detail::unit_double(rng());
      std::size_t k = 0;
      while (cdf[k] <= u && k + 1 < cdf.size()) ++k;
      distinct += seen[k] == 0;
      seen[k] = 1;
    }
    total += std::log(static_cast<double>(distinct));
  }
  return total / reps;
}

/// Analytic prediction ln(|S| - sum_s (1 - p(s))^m) of the m-sample estimate.
inline double approximation_model(const info::Distribution& p, int m) {
  if (m < 1) throw ContractViolation("approximation_model: m must be >= 1");
  // Expected distinct outcomes minus the one that the first draw always finds,
  // accumulated per outcome so that m = 1 gives exactly zero.
  if (m == 1) return 0.0;
  double extra = 0.0;
  for (double ps : p.probs()) extra += -std::expm1(m * std::log1p(-ps)) - ps;
  return std::log1p(extra);
}

/// The five 10-outcome test distributions of the estimator study: uniform;
/// one dominant outcome with mass 0.91 and 0.991; dyadic (1/2 ... 1/512,
/// 1/512); and a four-heavy mixture (4 x 1/5, 1/10, 5 x 1/50).
inline std::array<info::Distribution, 5> benchmark_distributions() {
  std::vector<double> p1(10, 0.1);
  std::vector<double> p2(10, 0.01);
  p2[0] = 0.91;
  std::vector<double> p3(10, 0.001);
  p3[0] = 0.991;
  std::vector<double> p4(10);
  for (int i = 0; i < 9; ++i) p4[static_cast<std::size_t>(i)] = std::ldexp(1.0, -(i + 1));
  p4[9] = std::ldexp(1.0, -9);
  std::vector<double> p5 = {0.2, 0.2, 0.2, 0.2, 0.1, 0.02, 0.02, 0.02, 0.02, 0.02};
  return {info::Distribution(std::move(p1)), info::Distribution(std::move(p2)),
          info::Distribution(std::move(p3)), info::Distribution(std::move(p4)),
          info::Distribution(std::move(p5))};
}

}  // namespace empower
