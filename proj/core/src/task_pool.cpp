#include "gaia/task_pool.hpp"

#include <algorithm>
#include <atomic>
#include <exception>

namespace gaia {

struct TaskPool::Batch {
  const std::function<void(std::size_t)>* task = nullptr;
  std::size_t count = 0;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> finished{0};

  std::mutex mutex;
  std::condition_variable done;
  std::exception_ptr error;

  void work() {
    for (std::size_t i = next.fetch_add(1, std::memory_order_relaxed); i < count;
         i = next.fetch_add(1, std::memory_order_relaxed)) {
      try {
        (*task)(i);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
      }
      if (finished.fetch_add(1, std::memory_order_acq_rel) + 1 == count) {
        std::lock_guard lock(mutex);
        done.notify_all();
      }
    }
  }
};

TaskPool::TaskPool(unsigned helpers) {
  threads_.reserve(helpers);
  for (unsigned i = 0; i < helpers; ++i) threads_.emplace_back([this] { helper_loop(); });
}

TaskPool::~TaskPool() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

TaskPool& TaskPool::shared() {
  // The caller works too, so hardware_concurrency - 1 helpers fill the machine.
  static TaskPool pool(std::max(1u, std::thread::hardware_concurrency()) - 1);
  return pool;
}

void TaskPool::helper_loop() {
  while (true) {
    std::shared_ptr<Batch> batch;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [this] { return stopping_ || !tickets_.empty(); });
      if (tickets_.empty()) return;
      batch = std::move(tickets_.front());
      tickets_.pop_front();
    }
    batch->work();
  }
}

void TaskPool::run(std::size_t count, std::size_t width,
                   const std::function<void(std::size_t)>& task) {
  if (count == 0) return;
  if (width == 0 || width > count) width = count;

  const std::size_t extra = std::min<std::size_t>(width - 1, threads_.size());
  if (extra == 0) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }

  auto batch = std::make_shared<Batch>();
  batch->task = &task;
  batch->count = count;

  {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < extra; ++i) tickets_.push_back(batch);
  }
  if (extra == 1) {
    wake_.notify_one();
  } else {
    wake_.notify_all();
  }

  batch->work();

  if (batch->finished.load(std::memory_order_acquire) != count) {
    std::unique_lock lock(batch->mutex);
    batch->done.wait(lock, [&] {
      return batch->finished.load(std::memory_order_acquire) == count;
    });
  }
  std::lock_guard lock(batch->mutex);
  if (batch->error) std::rethrow_exception(batch->error);
}

}  // namespace gaia
