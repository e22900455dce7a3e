// Copyright 2026 The schinzel-lab Authors
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
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace schinzel {

/// Fixed number of shards for sharded reductions. Results are merged in
/// shard order, so floating-point sums do not depend on the thread count.
inline constexpr std::size_t kShardCount = 64;

/// Half-open range [begin, end) of shard `shard` out of `shards` over `total` items.
struct ShardRange {
  std::uint64_t begin;
  std::uint64_t end;
};

inline ShardRange shard_range(std::uint64_t total, std::size_t shard, std::size_t shards) {
  const std::uint64_t base = total / shards;
  const std::uint64_t extra = total % shards;
  const std::uint64_t begin = shard * base + std::min<std::uint64_t>(shard, extra);
  return {begin, begin + base + (shard < extra ? 1 : 0)};
}

/// Runs `fn(shard)` for shard = 0..shards-1 on up to `threads` workers and
/// returns the per-shard results in shard order. The first exception thrown
/// by any shard is rethrown on the calling thread.
template <typename Result, typename Fn>
std::vector<Result> run_shards(std::size_t shards, unsigned threads, Fn&& fn) {
  std::vector<Result> results(shards);
  if (threads <= 1 || shards <= 1) {
    for (std::size_t s = 0; s < shards; ++s) results[s] = fn(s);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t s = next++; s < shards; s = next++) {
      try {
        results[s] = fn(s);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(shards));
  pool.reserve(count);
  for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace schinzel
