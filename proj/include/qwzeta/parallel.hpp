#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qwz {

/// Thread count from an explicit width, falling back to the QWZETA_THREADS
/// environment variable and then to 1.
int resolve_width(int requested);

/// Calls fn(i) for every i in [0, count) on up to `width` threads. Each index
/// is handled by exactly one call, so writing results into slot i keeps the
/// output order independent of the width. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, int width, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(width, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qwz
