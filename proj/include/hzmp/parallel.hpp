#ifndef HZMP_PARALLEL_HPP_
#define HZMP_PARALLEL_HPP_

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace hzmp {

/// Worker count: explicit request wins, then HZPLAN_THREADS, then hardware.
inline int workerCount(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HZPLAN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/**
 * @brief Runs f(i) for i in [0, n) on up to `threads` workers.
 *
 * Work items must be independent; the first exception is rethrown on the
 * calling thread after the join.
 */
template <typename F>
void parallelFor(int n, F&& f, int threads = 0) {
  const int workers = std::min(workerCount(threads), std::max(1, n));
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n || failed.load()) return;
        try {
          f(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace hzmp

#endif  // HZMP_PARALLEL_HPP_
