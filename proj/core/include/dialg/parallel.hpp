#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dialg {

/// Worker count: the set_thread_count() override, else $DIALG_THREADS if set
/// and positive, else the hardware concurrency (at least 1).
std::size_t thread_count();

/// Overrides thread_count() for this process; 0 restores the default.
void set_thread_count(std::size_t n);

/// Calls fn(i) for every i in [0, n). Work is distributed dynamically, so fn
/// must only write to state owned by index i; callers merge results in index
/// order afterwards, which keeps every output independent of the thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace dialg
