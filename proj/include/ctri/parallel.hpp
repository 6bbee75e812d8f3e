#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ctri {

inline unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(task) for every task in [0, count). Tasks are claimed in
/// increasing order; the first exception thrown by any task is rethrown
/// after all workers have stopped.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Lowest task index that reported success, shared between workers so that
/// tasks above the current best can bail out early.
class FirstSuccess {
 public:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  bool worth_running(std::size_t task) const { return task < best_.load(); }

  void offer(std::size_t task) {
    std::size_t cur = best_.load();
    while (task < cur && !best_.compare_exchange_weak(cur, task)) {
    }
  }

  std::size_t best() const { return best_.load(); }

 private:
  std::atomic<std::size_t> best_{kNone};
};

}  // namespace ctri
