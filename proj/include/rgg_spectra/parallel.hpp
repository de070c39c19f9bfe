#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rgg {

/// Process-wide worker budget. The CLI sets it from --threads (or
/// RGG_SPECTRA_THREADS); library code never exceeds it.
unsigned worker_threads() noexcept;
void set_worker_threads(unsigned threads) noexcept;

// Runs fn(i) for i in [0, count) on up to worker_threads() threads using static
// contiguous chunks. Callers write results into slot i, so the outcome does not
// depend on the thread count. The first exception thrown by any worker is
// rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(std::max(1u, worker_threads()), count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = count * t / threads;
    const std::size_t end = count * (t + 1) / threads;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& worker : pool) worker.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rgg
