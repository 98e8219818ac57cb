#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "collatz/config.hpp"

namespace collatz {

/// Splits [lo, hi] into fixed-size chunks, runs `work(chunk_lo, chunk_hi)` on
/// up to `workers` threads and returns the per-chunk results in range order.
/// The chunking does not depend on `workers`, so neither does the result.
template <class Work>
auto map_chunks(std::uint64_t lo, std::uint64_t hi, unsigned workers, Work work,
                std::uint64_t chunk_size = defaults::kChunkSize) {
  using Result = decltype(work(lo, hi));
  std::vector<Result> results;
  if (hi < lo) return results;
  const std::uint64_t span = hi - lo;  // inclusive width minus one
  const std::uint64_t chunks = span / chunk_size + 1;
  results.resize(chunks);

  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      const std::uint64_t first = lo + c * chunk_size;
      const std::uint64_t last = c + 1 == chunks ? hi : first + chunk_size - 1;
      try {
        results[c] = work(first, last);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const auto threads = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1U, workers), chunks));
  if (threads == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace collatz
