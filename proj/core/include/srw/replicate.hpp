#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "srw/rng.hpp"

namespace srw {

// Runs body(index, rng) for index = 0..n-1, each with its own generator
// derived from (seed, index). Replicates are handed to worker threads through
// an atomic counter, so results are a pure function of (seed, n, body) no
// matter how many threads run; body must only touch per-index state. The
// first exception thrown by any replicate is rethrown on the caller.
template <class Body>
void run_replicates(std::uint64_t seed, std::int64_t n, int threads, Body&& body) {
  if (threads < 1) threads = 1;
  if (threads == 1) {
    for (std::int64_t i = 0; i < n; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      body(i, rng);
    }
    return;
  }

  std::atomic<std::int64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n || failed.load(std::memory_order_relaxed)) return;
      try {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        body(i, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace srw
