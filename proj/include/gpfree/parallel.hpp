#pragma once

#include <cstdint>
#include <functional>

namespace gpfree {

// Worker cap from GPFREE_THREADS; 0 or unset means hardware concurrency.
unsigned worker_count();

// Number of t in [0, trials) with pred(t) true. Trials are independent keyed
// computations, so splitting them across threads cannot change the count.
std::uint64_t parallel_trial_count(std::uint64_t trials,
                                   const std::function<bool(std::uint64_t)>& pred);

}  // namespace gpfree
