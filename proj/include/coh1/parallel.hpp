#pragma once

// Minimal deterministic parallel map.  COH1_THREADS caps the worker count;
// results are written to caller-owned slots indexed by the loop variable, so
// output is identical for every thread count.

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace coh1::detail {

inline int thread_budget() {
  static const int n = [] {
    if (const char* env = std::getenv("COH1_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return static_cast<int>(std::min(v, 256L));
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc != 0 ? static_cast<int>(hc) : 1;
  }();
  return n;
}

// fn(i) is called once for each i in [0, n); fn must not throw.
template <class Fn>
inline void parallel_for(int n, Fn&& fn) {
  const int max_threads = thread_budget();
  const int threads = std::max(1, std::min(max_threads, n / 2048));
  if (threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (n + threads - 1) / threads;
  for (int w = 0; w < threads; ++w) {
    const int lo = w * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace coh1::detail
