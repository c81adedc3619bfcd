#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace bfsvec {

/// Fork-join pool of `size()` workers. The calling thread acts as worker 0,
/// so a pool of one spawns no threads.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t threads);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const noexcept { return helpers_.size() + 1; }

  /// Runs task(worker_index) on every worker and returns once all finished.
  /// The first exception thrown by any worker is rethrown here.
  void run(const std::function<void(std::size_t)>& task);

  /// Pins worker i to logical CPU cpus[i]; a negative entry leaves that worker
  /// unpinned. Returns which workers were actually pinned. Worker 0's original
  /// mask is restored by unpin() or the destructor.
  std::vector<bool> pin(std::span<const int> cpus);
  void unpin();

 private:
  void helper_loop(std::size_t index);

  std::vector<std::thread> helpers_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::size_t)>* task_ = nullptr;
  std::size_t generation_ = 0;
  std::size_t pending_ = 0;
  bool stopping_ = false;
  std::exception_ptr error_;

  std::vector<unsigned char> saved_caller_mask_;
};

}  // namespace bfsvec
