#pragma once

// Deterministic fan-out: task i always writes slot i, so the merged result
// does not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstddef>
#include <mutex>
#include <thread>
#include <vector>

namespace fpl {

template <class R, class F>
std::vector<R> parallel_map(std::size_t n, unsigned jobs, F&& fn) {
  std::vector<R> out(n);
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n ? n : 1)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace fpl
