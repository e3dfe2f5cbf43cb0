#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace genent {

/// GENENT_THREADS if set to a positive integer, else the hardware concurrency
/// (at least 1).
std::size_t default_thread_count();

/// Independent per-task seed (splitmix64 of seed and index), so results do not
/// depend on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Runs f(i) for i in [0, n). threads == 0 uses default_thread_count(). If any
/// task throws, the exception of the lowest failing index is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f, std::size_t threads = 0) {
  if (threads == 0) threads = default_thread_count();
  if (threads > n) threads = n;
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace genent
