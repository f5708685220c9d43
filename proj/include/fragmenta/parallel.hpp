// Copyright 2026 The Fragmenta Authors
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
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace fragmenta {

/// Worker count: FRAGMENTA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("FRAGMENTA_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs fn(begin, end) over contiguous stripes of [0, n). Stripes are disjoint,
/// so fn may write to per-index output without synchronization.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_stripe = 4096) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / min_stripe));
  if (workers <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  const std::size_t stripe = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * stripe;
    const std::size_t end = std::min(n, begin + stripe);
    if (begin >= end) break;
    threads.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : threads) t.join();
}

/// Stripe-wise reduction: partial(begin, end) results are combined in stripe
/// order, so the result does not depend on scheduling.
template <typename T, typename Partial, typename Combine>
T parallel_reduce(std::size_t n, T init, Partial&& partial, Combine&& combine, std::size_t min_stripe = 4096) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), std::max<std::size_t>(1, n / min_stripe));
  const std::size_t stripe = (n + workers - 1) / workers;
  std::vector<T> results(workers, init);
  parallel_for(
      workers,
      [&](std::size_t wb, std::size_t we) {
        for (std::size_t w = wb; w < we; ++w) {
          const std::size_t begin = w * stripe;
          const std::size_t end = std::min(n, begin + stripe);
          if (begin < end) results[w] = partial(begin, end);
        }
      },
      1);
  T acc = init;
  for (const T& r : results) acc = combine(acc, r);
  return acc;
}

}  // namespace fragmenta
