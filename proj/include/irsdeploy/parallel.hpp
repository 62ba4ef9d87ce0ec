#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace irsdeploy {

/// Worker count: IRS_DEPLOY_THREADS caps it, 0 or unset means auto.
inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("IRS_DEPLOY_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v) < hw ? static_cast<unsigned>(v) : hw;
  }
  return hw;
}

/// Best candidate over an index range. Chunks are scanned in parallel and
/// merged in chunk order, so ties always resolve to the smallest index
/// regardless of the worker count.
struct BestIndex {
  double value = -1.0;
  std::size_t index = 0;
  bool found = false;
};

inline BestIndex parallel_argmax(std::size_t n, const std::function<double(std::size_t)>& f,
                                 std::size_t min_parallel = 1u << 14) {
  auto scan = [&f](std::size_t lo, std::size_t hi) {
    BestIndex best;
    for (std::size_t i = lo; i < hi; ++i) {
      double v = f(i);
      if (!(v == v)) continue;  // skip NaN (infeasible point)
      if (!best.found || v > best.value) {
        best.value = v;
        best.index = i;
        best.found = true;
      }
    }
    return best;
  };

  unsigned workers = worker_count();
  if (n < min_parallel || workers <= 1) return scan(0, n);

  std::size_t chunks = workers;
  std::vector<BestIndex> partial(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  std::size_t step = (n + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t lo = c * step;
    std::size_t hi = lo + step < n ? lo + step : n;
    if (lo >= hi) continue;
    pool.emplace_back([&partial, c, lo, hi, &scan] { partial[c] = scan(lo, hi); });
  }
  for (auto& t : pool) t.join();

  BestIndex best;
  for (const auto& p : partial) {
    if (!p.found) continue;
    if (!best.found || p.value > best.value) best = p;  // chunk order keeps smallest index on ties
  }
  return best;
}

}  // namespace irsdeploy
