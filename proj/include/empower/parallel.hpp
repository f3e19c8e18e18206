#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace empower {

/// Thread budget for embarrassingly parallel loops. Results never depend on it.
struct Parallelism {
  unsigned threads = 1;

  static Parallelism hardware() {
    return {std::max(1u, std::thread::hardware_concurrency())};
  }
};

/// Calls fn(i) for every i in [0, count), spreading contiguous blocks over up to
/// `par.threads` threads. The first exception thrown by any call is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, Parallelism par, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, par.threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  pool.clear();  // joins
  if (error) std::rethrow_exception(error);
}

}  // namespace empower
