// Copyright 2026 The mmqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mmqed {

namespace detail {
inline std::atomic<int>& default_thread_setting() {
  static std::atomic<int> value{0};
  return value;
}
}  // namespace detail

/// Caps worker threads used by sweeps and Monte-Carlo loops (0 = hardware).
inline void set_default_threads(int threads) { detail::default_thread_setting() = std::max(0, threads); }

inline int resolve_threads(int requested) {
  int n = requested > 0 ? requested : detail::default_thread_setting().load();
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

/// Runs fn(i) for i in [0, count). Results must be written to per-index slots
/// so the caller's reduction order stays deterministic. The first exception
/// thrown by any task is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, int threads = 0) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace mmqed
