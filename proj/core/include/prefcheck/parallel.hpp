// Copyright 2026 The prefcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
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
#include <optional>
#include <thread>
#include <vector>

namespace prefcheck {

/// Runs fn(0..n-1) and stops at the first index whose result is a hit.
/// Returns the results of every index up to and including the first hit (or
/// all n when there is none). The returned prefix is identical for every
/// thread count: workers only skip indices above the best hit seen so far, and
/// every index below the final hit is always evaluated.
template <typename Result, typename Fn, typename IsHit>
std::vector<Result> first_hit_scan(std::size_t n, unsigned threads, Fn&& fn, IsHit&& is_hit) {
  std::vector<Result> out;
  if (threads <= 1 || n < 2) {
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(fn(i));
      if (is_hit(out.back())) break;
    }
    return out;
  }

  std::vector<std::optional<Result>> slots(n);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{n};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      if (i > best.load(std::memory_order_acquire)) continue;
      Result r = fn(i);
      const bool hit = is_hit(r);
      slots[i] = std::move(r);
      if (hit) {
        std::size_t cur = best.load(std::memory_order_acquire);
        while (i < cur && !best.compare_exchange_weak(cur, i, std::memory_order_acq_rel)) {
        }
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(threads, n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  const std::size_t limit = best.load() < n ? best.load() + 1 : n;
  out.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i) out.push_back(std::move(*slots[i]));
  return out;
}

}  // namespace prefcheck
