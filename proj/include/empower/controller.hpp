#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Greedy one-step empowerment controller: estimate the empowerment of every
// successor state and take an action with the highest reachable count,
// breaking ties uniformly at random.

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "empower/blockworld.hpp"
#include "empower/empowerment.hpp"
#include "empower/parallel.hpp"
#include "empower/rng.hpp"

namespace empower {

struct ActionEvaluation {
  Action action;
  EmpowermentEstimate estimate;
};

struct Decision {
  Action chosen = Action::DoNothing;
  /// One entry per action, in `action_set` order.
  std::vector<ActionEvaluation> evaluations;
  int tie_set_size = 1;
};

/// Scores a successor state; the default is sparse sampling. Swappable so the
/// tie-break logic can be driven by exact enumeration in tests.
using SuccessorEstimator =
    std::function<EmpowermentEstimate(const WorldState& successor, std::size_t action_index)>;

/// Picks uniformly among the argmax of the evaluations by reachable count.
inline Decision decide(std::vector<ActionEvaluation> evaluations, std::uint64_t tie_seed) {
  if (evaluations.empty()) throw ContractViolation("decide: no evaluations");
  std::uint64_t best = 0;
  for (const auto& ev : evaluations) best = std::max(best, ev.estimate.reachable_count);
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < evaluations.size(); ++i)
    if (evaluations[i].estimate.reachable_count == best) ties.push_back(i);

  SplitMix64 rng(tie_seed);
  const auto pick = bounded(static_cast<std::uint32_t>(rng() >> 32),
                            static_cast<std::uint32_t>(ties.size()));
  Decision d;
  d.chosen = evaluations[ties[pick]].action;
  d.tie_set_size = static_cast<int>(ties.size());
  d.evaluations = std::move(evaluations);
  return d;
}

/// Evaluates every action of `e` with a caller-supplied estimator.
inline Decision choose_action_with(const WorldState& w, Embodiment e,
                                   const SuccessorEstimator& estimate, std::uint64_t tie_seed,
                                   Parallelism par = {}) {
  const auto actions = action_set(e);
  std::vector<ActionEvaluation> evals(actions.size());
  parallel_for(actions.size(), par, [&](std::size_t i) {
    WorldState next = w;
    detail::step_in_place(next, actions[i], e);
    evals[i] = {actions[i], estimate(next, i)};
  });
  return decide(std::move(evals), tie_seed);
}

/// Greedy sparse-empowerment decision for the state at `w.turn()`.
///
/// Action i's successor is scored with the stream family
/// (seed, turn, i, SuccessorEstimate); the tie-break draws from
/// (seed, turn, 0, TieBreak).
inline Decision choose_action(const WorldState& w, Embodiment e, int n, int m,
                              std::uint64_t seed, Parallelism par = {}) {
  const auto turn = static_cast<std::uint64_t>(w.turn());
  const SuccessorEstimator sparse = [&](const WorldState& next, std::size_t i) {
    return sparse_empowerment(next, e, n, m,
                              StreamKey{seed, turn, i, StreamPurpose::SuccessorEstimate});
  };
  const StreamKey tie{seed, turn, 0, StreamPurpose::TieBreak};
  return choose_action_with(w, e, sparse, tie.sample_seed(0), par);
}

}  // namespace empower
