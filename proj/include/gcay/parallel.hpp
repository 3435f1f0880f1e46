#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gcay {

/// Runs fn(i) for every i in [0, count) on up to `workers` threads. Work is
/// handed out in fixed-size chunks; results must be written to per-index
/// slots so the outcome never depends on scheduling. The first exception
/// thrown by any task is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn, std::size_t chunk = 64) {
  workers = std::max(1u, workers);
  if (workers == 1 || count <= chunk) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    try {
      for (;;) {
        const std::size_t begin = next.fetch_add(chunk);
        if (begin >= count) return;
        const std::size_t end = std::min(count, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) fn(i);
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  {
    std::vector<std::jthread> pool;
    const auto n_threads = std::min<std::size_t>(workers, (count + chunk - 1) / chunk);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace gcay
