#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qgrass {

namespace detail {
inline std::atomic<unsigned>& thread_setting() {
  static std::atomic<unsigned> threads{1};
  return threads;
}
}  // namespace detail

/// Worker count used by the internal parallel loops (default 1).
inline unsigned thread_count() { return detail::thread_setting().load(); }
inline void set_thread_count(unsigned n) { detail::thread_setting().store(std::max(1U, n)); }

/// Runs body(i) for i in [0, count).  Each index is handled by exactly one
/// worker; bodies must only write to index-private state.
template <typename Body>
void parallel_for(std::size_t count, Body&& body, std::size_t min_chunk = 16) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count / std::max<std::size_t>(min_chunk, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace qgrass
