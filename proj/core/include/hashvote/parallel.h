/*
 * Copyright 2026 The Hashvote Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HASHVOTE_PARALLEL_H_
#define HASHVOTE_PARALLEL_H_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hashvote {

// Number of workers to use when a caller passes 0.
inline unsigned DefaultWorkerCount() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for every i in [0, count) on up to `workers` threads. Work is
// split into contiguous blocks; callers write results into slot i so the
// outcome never depends on scheduling. The first exception thrown by any
// body is rethrown on the calling thread.
template <typename Body>
void ParallelFor(std::size_t count, unsigned workers, Body&& body) {
  if (workers == 0) workers = DefaultWorkerCount();
  const std::size_t threads =
      std::min<std::size_t>(workers, count == 0 ? 1 : count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::size_t block = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * block;
    const std::size_t end = std::min(count, begin + block);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace hashvote

#endif  // HASHVOTE_PARALLEL_H_
