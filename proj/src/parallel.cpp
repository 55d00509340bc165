#include "metivier/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace metivier {

namespace {
std::atomic<int> g_threads{0};
}

void set_thread_count(int count) { g_threads.store(count < 0 ? 0 : count); }

int thread_count() {
  int n = g_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::size_t begin, std::size_t end,
                     const std::function<void(std::size_t, std::size_t)>& body) {
  if (begin >= end) return;
  const std::size_t total = end - begin;
  const int workers = std::min<std::size_t>(thread_count(), total);
  if (workers <= 1) {
    body(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t base = total / workers;
  const std::size_t extra = total % workers;
  std::size_t lo = begin;
  for (int w = 0; w < workers; ++w) {
    std::size_t hi = lo + base + (static_cast<std::size_t>(w) < extra ? 1 : 0);
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    lo = hi;
  }
  for (auto& t : pool) t.join();
}

void parallel_for(std::size_t begin, std::size_t end,
                  const std::function<void(std::size_t)>& body) {
  if (begin >= end) return;
  const std::size_t total = end - begin;
  const int workers = std::min<std::size_t>(thread_count(), total);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }
  // dynamic scheduling: per-index costs can be badly skewed
  std::atomic<std::size_t> next{begin};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= end) return;
        body(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace metivier
