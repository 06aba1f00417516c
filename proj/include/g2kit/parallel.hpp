#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace g2kit {

// Kernel parallelism is capped by the G2KIT_THREADS environment variable.
inline int max_threads() {
  static const int n = [] {
    if (const char* env = std::getenv("G2KIT_THREADS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }();
  return n;
}

// Static partition of [0, n) into contiguous chunks, one thread per chunk.
// f(begin, end) must not touch another chunk's output; reductions are done
// per chunk and combined in chunk order by the caller.
template <typename F>
void parallel_for(std::size_t n, F&& f) {
  const int nt = std::min<std::size_t>(max_threads(), std::max<std::size_t>(n, 1));
  if (nt <= 1 || n < 1024) {
    f(std::size_t(0), n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::size_t b = std::min(n, t * chunk), e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&f, b, e] { f(b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace g2kit
