#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace horomink {

/// Worker count: HOROMINK_THREADS if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("HOROMINK_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Sums body(i) for i in [0, count). The range is cut into fixed chunks whose
/// partial sums are added in chunk order, so the result does not depend on
/// the number of workers.
template <class Body>
double deterministic_sum(std::size_t count, Body&& body, std::size_t chunk = 256) {
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<double> partial(chunks, 0.0);
  auto run_chunk = [&](std::size_t c) {
    const std::size_t lo = c * chunk, hi = std::min(count, lo + chunk);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += body(i);
    partial[c] = acc;
  };
  const unsigned workers = std::min<std::size_t>(worker_count(), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace horomink
