#include "gaia/task_pool.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <vector>

namespace gaia {
namespace {

TEST(TaskPool, RunsEveryTaskOnce) {
  TaskPool pool(3);
  std::vector<std::atomic<int>> hits(1000);
  pool.run(hits.size(), 0, [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(TaskPool, ZeroHelpersRunsOnCaller) {
  TaskPool pool(0);
  EXPECT_EQ(pool.helpers(), 0u);
  const auto caller = std::this_thread::get_id();
  int n = 0;
  pool.run(10, 0, [&](std::size_t) {
    EXPECT_EQ(std::this_thread::get_id(), caller);
    ++n;
  });
  EXPECT_EQ(n, 10);
}

TEST(TaskPool, WidthBoundsConcurrency) {
  TaskPool pool(4);
  std::atomic<int> live{0};
  std::atomic<int> peak{0};
  pool.run(64, 2, [&](std::size_t) {
    const int now = ++live;
    int p = peak.load();
    while (now > p && !peak.compare_exchange_weak(p, now)) {
    }
    std::this_thread::sleep_for(std::chrono::microseconds(200));
    --live;
  });
  EXPECT_LE(peak.load(), 2);
}

TEST(TaskPool, RethrowsTaskException) {
  TaskPool pool(2);
  std::atomic<int> done{0};
  EXPECT_THROW(pool.run(20, 0,
                        [&](std::size_t i) {
                          if (i == 7) throw std::runtime_error("boom");
                          ++done;
                        }),
               std::runtime_error);
  // The pool is still usable afterwards.
  int n = 0;
  pool.run(5, 1, [&](std::size_t) { ++n; });
  EXPECT_EQ(n, 5);
}

TEST(TaskPool, ConcurrentCallersAllComplete) {
  TaskPool pool(2);
  std::atomic<int> total{0};
  std::vector<std::thread> callers;
  for (int t = 0; t < 8; ++t) {
    callers.emplace_back([&] { pool.run(100, 0, [&](std::size_t) { ++total; }); });
  }
  for (auto& th : callers) th.join();
  EXPECT_EQ(total.load(), 800);
}

TEST(TaskPool, EmptyBatchReturns) {
  EXPECT_NO_THROW(TaskPool::shared().run(0, 0, [](std::size_t) { FAIL(); }));
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  EXPECT_EQ(TaskPool::shared().helpers(), hw - 1);
}

}  // namespace
}  // namespace gaia
