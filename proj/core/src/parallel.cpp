#include "conewave/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>

namespace conewave {

struct ThreadPool::Impl {
  std::vector<std::thread> threads;
  std::mutex mu;
  std::condition_variable cv_work;
  std::condition_variable cv_done;

  // current batch
  const std::function<void(std::size_t)>* fn = nullptr;
  std::size_t n_items = 0;
  std::atomic<std::size_t> next{0};
  std::size_t active = 0;
  std::uint64_t generation = 0;
  std::exception_ptr error;
  bool stop = false;

  void worker() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock lk(mu);
        cv_work.wait(lk, [&] { return stop || generation != seen; });
        if (stop) return;
        seen = generation;
      }
      run_items();
      {
        std::lock_guard lk(mu);
        if (--active == 0) cv_done.notify_all();
      }
    }
  }

  void run_items() {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n_items) return;
      try {
        (*fn)(i);
      } catch (...) {
        std::lock_guard lk(mu);
        if (!error) error = std::current_exception();
      }
    }
  }
};

ThreadPool::ThreadPool(unsigned n) {
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  workers_ = n;
  if (n == 1) return;
  impl_ = new Impl;
  impl_->threads.reserve(n - 1);  // calling thread participates
  for (unsigned i = 0; i + 1 < n; ++i) impl_->threads.emplace_back([this] { impl_->worker(); });
}

ThreadPool::~ThreadPool() {
  if (!impl_) return;
  {
    std::lock_guard lk(impl_->mu);
    impl_->stop = true;
  }
  impl_->cv_work.notify_all();
  for (auto& t : impl_->threads) t.join();
  delete impl_;
}

void ThreadPool::parallel_for(std::size_t n_items,
                              const std::function<void(std::size_t)>& fn) {
  if (n_items == 0) return;
  if (!impl_ || n_items == 1) {
    for (std::size_t i = 0; i < n_items; ++i) fn(i);
    return;
  }
  {
    std::lock_guard lk(impl_->mu);
    impl_->fn = &fn;
    impl_->n_items = n_items;
    impl_->next.store(0, std::memory_order_relaxed);
    impl_->active = impl_->threads.size();
    impl_->error = nullptr;
    ++impl_->generation;
  }
  impl_->cv_work.notify_all();
  impl_->run_items();  // caller works too
  {
    std::unique_lock lk(impl_->mu);
    impl_->cv_done.wait(lk, [&] { return impl_->active == 0; });
    if (impl_->error) std::rethrow_exception(impl_->error);
  }
}

}  // namespace conewave
