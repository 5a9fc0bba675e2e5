#pragma once

#include <algorithm>
#include <complex>
#include <cstdlib>
#include <thread>
#include <vector>

namespace shadowsum {

/// Thread budget: SHADOWSUM_THREADS when set (positive integer), else the
/// hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("SHADOWSUM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Splits [0, n) into contiguous slices, evaluates worker(begin, end) on
/// each, and combines the partial sums in slice order.  The slicing and
/// combine order are fixed, so results do not depend on scheduling.
template <typename Worker>
std::complex<double> parallel_sum_slices(int n, bool use_threads, Worker worker) {
  int threads = use_threads ? std::min(thread_budget(), n) : 1;
  if (threads <= 1) return worker(0, n);

  std::vector<std::complex<double>> partial(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int begin = static_cast<int>(static_cast<long long>(n) * t / threads);
    const int end = static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
    pool.emplace_back([&partial, t, begin, end, &worker] { partial[t] = worker(begin, end); });
  }
  for (auto& th : pool) th.join();
  std::complex<double> total{0.0, 0.0};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace shadowsum
