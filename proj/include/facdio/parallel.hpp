#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace facdio {

inline unsigned effective_jobs(unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  return jobs;
}

/// Splits [0, n) into at most `jobs` contiguous chunks, runs fn(begin, end) on
/// each in its own thread, and returns the results in chunk order. The first
/// exception thrown by any worker is rethrown on the caller.
template <typename Fn>
auto parallel_map_chunks(std::size_t n, unsigned jobs, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, std::size_t, std::size_t>> {
  using R = std::invoke_result_t<Fn&, std::size_t, std::size_t>;
  jobs = effective_jobs(jobs);
  const std::size_t k = std::max<std::size_t>(1, std::min<std::size_t>(jobs, n));
  std::vector<R> results(k);
  if (k == 1) {
    results[0] = fn(0, n);
    return results;
  }
  std::vector<std::exception_ptr> errors(k);
  std::vector<std::thread> threads;
  threads.reserve(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t begin = n * c / k, end = n * (c + 1) / k;
    threads.emplace_back([&, c, begin, end] {
      try {
        results[c] = fn(begin, end);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace facdio
