#include "gpfree/parallel.hpp"

#include <cstdlib>
#include <thread>
#include <vector>

namespace gpfree {

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GPFREE_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

std::uint64_t parallel_trial_count(std::uint64_t trials,
                                   const std::function<bool(std::uint64_t)>& pred) {
  unsigned workers = worker_count();
  if (workers <= 1 || trials < 4096) {
    std::uint64_t hits = 0;
    for (std::uint64_t t = 0; t < trials; ++t) hits += pred(t) ? 1 : 0;
    return hits;
  }
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      std::uint64_t lo = trials * w / workers;
      std::uint64_t hi = trials * (w + 1) / workers;
      std::uint64_t hits = 0;
      for (std::uint64_t t = lo; t < hi; ++t) hits += pred(t) ? 1 : 0;
      partial[w] = hits;
    });
  }
  for (auto& th : pool) th.join();
  std::uint64_t hits = 0;
  for (std::uint64_t h : partial) hits += h;
  return hits;
}

}  // namespace gpfree
