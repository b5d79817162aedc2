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

#ifndef CONJPROB_PARALLEL_HPP
#define CONJPROB_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace conjprob {

int default_worker_count();

// Splits [0, n_items) into fixed-size chunks and runs
// fn(chunk_index, begin, end) on `workers` threads (workers <= 0 means all
// cores). The chunk layout depends only on n_items and chunk_size, never on
// the thread count, so per-chunk (or per-item) RNG streams make results
// independent of the degree of parallelism. Exceptions thrown by fn are
// rethrown on the calling thread.
void parallel_chunks(
    std::int64_t n_items, std::int64_t chunk_size, int workers,
    const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

}  // namespace conjprob

#endif  // CONJPROB_PARALLEL_HPP
