#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kalpha {

// Fork-join over [0, count): task(i) runs exactly once per index on one of
// `workers` threads. Tasks must write only to slots they own. If any task
// throws, the exception from the lowest failing index is rethrown after all
// threads join, so error reporting does not depend on scheduling.
template <class Task>
void parallel_for(std::size_t count, unsigned workers, Task&& task) {
  workers = std::max(1u, workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_index = count;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < first_error_index) {
          first_error_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };

  const auto n_threads = static_cast<std::size_t>(workers) < count
                             ? static_cast<std::size_t>(workers)
                             : count;
  std::vector<std::jthread> threads;
  threads.reserve(n_threads - 1);
  for (std::size_t t = 1; t < n_threads; ++t) threads.emplace_back(worker);
  worker();
  threads.clear();

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace kalpha
