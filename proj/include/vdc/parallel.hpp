#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace vdc {

namespace detail {
inline std::atomic<unsigned>& worker_count() {
  static std::atomic<unsigned> count{1};
  return count;
}
}  // namespace detail

// Caps the number of threads used inside library operations. Results never
// depend on this value: work is split into fixed chunks and reduced in order.
inline void set_workers(unsigned k) { detail::worker_count() = std::max(1u, k); }
inline unsigned workers() { return detail::worker_count(); }

// Runs body(begin, end) over [0, n) split into contiguous chunks. The chunk
// layout depends only on n and chunk_count, never on the worker count.
template <typename Body>
void parallel_chunks(std::size_t n, std::size_t chunk_count, Body&& body) {
  if (n == 0) return;
  chunk_count = std::clamp<std::size_t>(chunk_count, 1, n);
  const std::size_t step = (n + chunk_count - 1) / chunk_count;
  const unsigned k = std::min<unsigned>(workers(), static_cast<unsigned>(chunk_count));
  if (k <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) {
      const std::size_t lo = c * step;
      if (lo >= n) break;
      body(c, lo, std::min(n, lo + step));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (unsigned t = 0; t < k; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < chunk_count; c = next++) {
        const std::size_t lo = c * step;
        if (lo >= n) continue;
        body(c, lo, std::min(n, lo + step));
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace vdc
