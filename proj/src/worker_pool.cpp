#include "bfsvec/worker_pool.hpp"

#include <cstring>

#ifdef __linux__
#include <pthread.h>
#include <sched.h>
#endif

#include "bfsvec/common.hpp"

namespace bfsvec {

WorkerPool::WorkerPool(std::size_t threads) {
  BFSVEC_EXPECTS(threads >= 1, "worker pool needs at least one thread");
  helpers_.reserve(threads - 1);
  for (std::size_t i = 1; i < threads; ++i) helpers_.emplace_back([this, i] { helper_loop(i); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : helpers_) t.join();
  unpin();
}

void WorkerPool::helper_loop(std::size_t index) {
  std::size_t seen = 0;
  for (;;) {
    const std::function<void(std::size_t)>* task = nullptr;
    {
      std::unique_lock lock(mutex_);
      start_cv_.wait(lock, [&] { return stopping_ || generation_ != seen; });
      if (stopping_) return;
      seen = generation_;
      task = task_;
    }
    std::exception_ptr err;
    try {
      (*task)(index);
    } catch (...) {
      err = std::current_exception();
    }
    std::lock_guard lock(mutex_);
    if (err && !error_) error_ = err;
    if (--pending_ == 0) done_cv_.notify_one();
  }
}

void WorkerPool::run(const std::function<void(std::size_t)>& task) {
  if (helpers_.empty()) {
    task(0);
    return;
  }
  {
    std::lock_guard lock(mutex_);
    task_ = &task;
    pending_ = helpers_.size();
    error_ = nullptr;
    ++generation_;
  }
  start_cv_.notify_all();

  std::exception_ptr own;
  try {
    task(0);
  } catch (...) {
    own = std::current_exception();
  }
  std::unique_lock lock(mutex_);
  done_cv_.wait(lock, [&] { return pending_ == 0; });
  task_ = nullptr;
  if (own) std::rethrow_exception(own);
  if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
}

#ifdef __linux__

namespace {

bool pin_handle(pthread_t handle, int cpu) {
  if (cpu < 0 || cpu >= CPU_SETSIZE) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return pthread_setaffinity_np(handle, sizeof(set), &set) == 0;
}

}  // namespace

std::vector<bool> WorkerPool::pin(std::span<const int> cpus) {
  std::vector<bool> pinned(size(), false);
  for (std::size_t i = 0; i < size() && i < cpus.size(); ++i) {
    if (cpus[i] < 0) continue;
    if (i == 0) {
      if (saved_caller_mask_.empty()) {
        cpu_set_t current;
        if (pthread_getaffinity_np(pthread_self(), sizeof(current), &current) == 0) {
          saved_caller_mask_.resize(sizeof(current));
          std::memcpy(saved_caller_mask_.data(), &current, sizeof(current));
        }
      }
      pinned[0] = pin_handle(pthread_self(), cpus[0]);
    } else {
      pinned[i] = pin_handle(helpers_[i - 1].native_handle(), cpus[i]);
    }
  }
  return pinned;
}

void WorkerPool::unpin() {
  if (saved_caller_mask_.empty()) return;
  cpu_set_t saved;
  std::memcpy(&saved, saved_caller_mask_.data(), sizeof(saved));
  pthread_setaffinity_np(pthread_self(), sizeof(saved), &saved);
  saved_caller_mask_.clear();
}

#else

std::vector<bool> WorkerPool::pin(std::span<const int>) { return std::vector<bool>(size(), false); }
void WorkerPool::unpin() {}

#endif

}  // namespace bfsvec
