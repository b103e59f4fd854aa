#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace z2flux {

inline unsigned default_threads() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Runs fn(i) for i in [0, n). Work is handed out in fixed-size chunks via an
// atomic counter; fn must only write to its own slot(s).
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
  if (threads == 0) threads = default_threads();
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t chunk = 256;
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t begin = cursor.fetch_add(chunk);
      if (begin >= n) return;
      std::size_t end = begin + chunk < n ? begin + chunk : n;
      for (std::size_t i = begin; i < end; ++i) fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

// Deterministic parallel reduction: partial sums are accumulated per fixed
// chunk (chunk grid independent of thread count) and combined in chunk order,
// so the result is bit-identical for any --threads value.
template <class Eval>
double parallel_sum(std::size_t n, Eval&& eval, unsigned threads = 0) {
  const std::size_t chunk = 1024;
  const std::size_t nchunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(nchunks, 0.0);
  parallel_for(
      nchunks,
      [&](std::size_t c) {
        double s = 0.0;
        std::size_t end = (c + 1) * chunk < n ? (c + 1) * chunk : n;
        for (std::size_t i = c * chunk; i < end; ++i) s += eval(i);
        partial[c] = s;
      },
      threads);
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace z2flux
