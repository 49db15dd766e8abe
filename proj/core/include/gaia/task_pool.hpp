#pragma once

#include <condition_variable>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <thread>
#include <vector>

namespace gaia {

/// Fixed set of helper threads for fanning a batch of independent tasks out
/// and joining on all of them.
///
/// run() publishes the batch, wakes up to width-1 helpers and then executes
/// tasks on the calling thread too, so a batch always makes progress even if
/// every helper is busy with other callers' batches. It returns once every
/// task has finished. Safe to call from many threads at once.
class TaskPool {
 public:
  explicit TaskPool(unsigned helpers);
  ~TaskPool();

  TaskPool(const TaskPool&) = delete;
  TaskPool& operator=(const TaskPool&) = delete;

  /// Runs task(i) for every i in [0, count) with at most `width` tasks in
  /// flight (width 0 means count). Rethrows the first exception a task threw;
  /// tasks that had not started by then may be skipped. With no helper to
  /// wake (width 1 or a helperless pool) the tasks simply run inline.
  void run(std::size_t count, std::size_t width, const std::function<void(std::size_t)>& task);

  unsigned helpers() const { return static_cast<unsigned>(threads_.size()); }

  /// Process-wide pool with hardware_concurrency - 1 helpers (none on a
  /// single-core machine, where batches run inline on the caller).
  static TaskPool& shared();

 private:
  struct Batch;

  void helper_loop();

  std::mutex mutex_;
  std::condition_variable wake_;
  std::deque<std::shared_ptr<Batch>> tickets_;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

}  // namespace gaia
