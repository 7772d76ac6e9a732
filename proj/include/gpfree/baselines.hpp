#pragma once

#include <cstdint>
#include <vector>

#include "gpfree/window.hpp"

namespace gpfree {

// Deterministic sieve constructions to compare the randomized process
// against.

// Members of [1, n] not divisible by any p^t. Marks multiples of p^t for
// primes p <= n^(1/t) directly; no per-element factoring.
SequenceWindow sieve_power_free(u64 n, int t);

// max(3, eps * ln m)
double variable_k(double eps, u64 m);

struct KFreeWitness {
  u64 m = 0;
  u64 p = 0;         // smallest witnessing prime, p <= e^(1/eps)
  int exponent = 0;  // ceil(variable_k(eps, m)); p^exponent divides m

  friend bool operator==(const KFreeWitness&, const KFreeWitness&) = default;
};

struct KFreeResult {
  SequenceWindow window;
  std::vector<KFreeWitness> witnesses;  // one per excluded m, ascending in m
};

// Excludes every m in [1, n] divisible by p^ceil(variable_k(eps, m)) for some
// prime p. Any witnessing prime satisfies p^3 <= m and
// ln p <= ln m / variable_k(eps, m) <= 1/eps, so only primes up to e^(1/eps)
// are scanned.
KFreeResult sieve_variable_kfree(u64 n, double eps);

// Primes p with p < e^(1/eps), ascending.
std::vector<u64> epsilon_prime_set(double eps);

}  // namespace gpfree
