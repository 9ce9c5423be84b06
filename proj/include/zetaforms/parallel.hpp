#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace zf {

// Run body(i) for i in [0, count) on up to `jobs` threads.  Work is handed out
// by an atomic counter; callers write into per-index slots so the result does
// not depend on scheduling.  The first exception is rethrown after joining.
template <class Body>
void parallel_for(std::size_t count, unsigned jobs, Body&& body) {
  if (jobs <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  unsigned n = std::min<std::size_t>(jobs, count);
  std::vector<std::jthread> pool;
  pool.reserve(n);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace zf
