#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nksearch {

// Runs fn(i) for i in [0, count) on up to `threads` workers (0 = hardware
// count). Work items must be independent; the first exception thrown is
// rethrown on the calling thread after all workers stop.
template <typename Fn>
void parallel_for_index(int count, int threads, Fn&& fn) {
  if (count <= 0) return;
  int worker_count = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  worker_count = std::clamp(worker_count, 1, count);

  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };

  if (worker_count == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(worker_count));
    for (int t = 0; t < worker_count; ++t) pool.emplace_back(body);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace nksearch
