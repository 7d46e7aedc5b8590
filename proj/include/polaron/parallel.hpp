// Copyright 2026 The polaron-strongfield Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace polaron {

/// Name of the environment variable selecting the worker count.
inline constexpr const char* kThreadsEnv = "POLARON_THREADS";

/// Worker count from POLARON_THREADS, else hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs task(i) for i in [0, n) on up to `threads` workers. Each index runs
/// exactly once; the first exception thrown is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& task,
                  std::size_t threads = thread_count());

/// Maps fn over [0, n) in parallel; results are stored by input index.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& fn, std::size_t threads = thread_count()) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); }, threads);
  return out;
}

}  // namespace polaron
