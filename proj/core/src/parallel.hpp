#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dtnreward::detail {

// Runs fn(b) for b in [0, count) on a small worker pool. Callers write into
// per-block slots and reduce in block order afterwards, so results never
// depend on scheduling.
template <class Fn>
void for_each_block(std::size_t count, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t b = 0; b < count; ++b) fn(b);
    return;
  }
  std::mutex mu;
  std::size_t next = 0;
  std::exception_ptr failure;
  auto work = [&] {
    for (;;) {
      std::size_t b;
      {
        std::lock_guard lock(mu);
        if (next >= count || failure) return;
        b = next++;
      }
      try {
        fn(b);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace dtnreward::detail
