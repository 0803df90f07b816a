#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace replab {

// Evaluates fn(i) for i in [0, units) on up to `workers` threads and returns the
// results in index order. Units are claimed from a shared counter; the first
// exception thrown by any unit is rethrown after all threads join.
template <typename T, typename F>
std::vector<T> parallel_map(std::uint64_t units, int workers, F&& fn) {
  std::vector<T> out(units);
  if (workers <= 1 || units <= 1) {
    for (std::uint64_t i = 0; i < units; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= units || failed.load()) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  const int threads = static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), units));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace replab
