#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Counter-derived random streams.
//
// Every sampled action sequence gets its own generator whose seed is a hash
// of (master seed, turn, evaluated action, purpose, sample index). Results
// therefore do not depend on which thread evaluates which sample, or in what
// order.

#include <cstdint>
#include <limits>

namespace empower {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Absorbs one more word into a running hash.
constexpr std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) noexcept {
  return mix64(h ^ mix64(v));
}

/// SplitMix64 generator; satisfies UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  constexpr explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Maps a 32-bit word onto [0, bound) by multiply-shift. The bias is at most
/// bound / 2^32, far below anything a sample of a few thousand draws resolves.
constexpr std::uint32_t bounded(std::uint32_t word, std::uint32_t bound) noexcept {
  return static_cast<std::uint32_t>(
      (static_cast<std::uint64_t>(word) * static_cast<std::uint64_t>(bound)) >> 32);
}

/// What a derived stream is used for; keeps the families disjoint.
enum class StreamPurpose : std::uint64_t {
  SuccessorEstimate = 1,
  Counterfactual = 2,
  TieBreak = 3,
  Discovery = 4,
  Standalone = 5,
};

/// Seed material identifying one family of per-sample streams.
///
/// `sample_seed(i)` yields the seed for sample `i`; two keys that differ in any
/// field give unrelated streams.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::uint64_t turn = 0;
  std::uint64_t action_index = 0;
  StreamPurpose purpose = StreamPurpose::Standalone;

  constexpr std::uint64_t base() const noexcept {
    std::uint64_t h = mix64(master_seed);
    h = hash_combine(h, turn);
    h = hash_combine(h, action_index);
    h = hash_combine(h, static_cast<std::uint64_t>(purpose));
    return h;
  }

  constexpr std::uint64_t sample_seed(std::uint64_t sample) const noexcept {
    return hash_combine(base(), sample);
  }
};

}  // namespace empower
