#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace conewave {

/// Fixed pool of worker threads with a blocking parallel_for.
///
/// Work items must write to disjoint state; under that contract every result
/// is independent of scheduling, so a run is bitwise reproducible for any
/// worker count. Reductions are done by the caller over per-item slots, in
/// index order.
class ThreadPool {
 public:
  /// n = 0 picks hardware_concurrency. n = 1 never spawns threads.
  explicit ThreadPool(unsigned n = 0);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  unsigned size() const { return workers_; }

  /// Runs fn(i) for i in [0, n_items). Blocks until all items finish.
  /// The first exception thrown by any item is rethrown here.
  void parallel_for(std::size_t n_items, const std::function<void(std::size_t)>& fn);

 private:
  struct Impl;
  Impl* impl_ = nullptr;  // null when workers_ == 1
  unsigned workers_;
};

}  // namespace conewave
