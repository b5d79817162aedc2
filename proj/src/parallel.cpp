// Copyright 2026  The conjprob authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace conjprob {

int default_worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(
    std::int64_t n_items, std::int64_t chunk_size, int workers,
    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  if (n_items <= 0) return;
  if (chunk_size <= 0) chunk_size = n_items;
  const std::int64_t n_chunks = (n_items + chunk_size - 1) / chunk_size;
  if (workers <= 0) workers = default_worker_count();
  const int n_threads =
      static_cast<int>(std::min<std::int64_t>(workers, n_chunks));

  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t lo = c * chunk_size;
    const std::int64_t hi = std::min(lo + chunk_size, n_items);
    fn(c, lo, hi);
  };

  if (n_threads <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::int64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      try {
        run_chunk(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace conjprob
