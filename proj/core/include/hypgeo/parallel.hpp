#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hypgeo {

// Worker count: HYPGEO_THREADS if set (clamped to >= 1), otherwise hardware.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("HYPGEO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
    return 1;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Chunked parallel loop over [0, n). body(i) must only write state owned by
// index i; results are then deterministic regardless of the thread count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const unsigned workers = std::min<std::size_t>(thread_budget(), n ? n : 1);
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace hypgeo
