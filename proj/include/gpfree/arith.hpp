#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpfree/errors.hpp"

// Exact unsigned 64-bit number theory. Overflow is a hard error everywhere:
// operations either throw errc::overflow or use the *_if_fits variants that
// report non-fitting results instead of wrapping.

namespace gpfree::arith {

using u64 = std::uint64_t;

u64 checked_add(u64 x, u64 y);
u64 checked_mul(u64 x, u64 y);
u64 checked_pow(u64 base, int exp);

std::optional<u64> mul_if_fits(u64 x, u64 y) noexcept;
std::optional<u64> pow_if_fits(u64 base, int exp) noexcept;

// Deterministic for the full 64-bit range.
bool is_prime(u64 n);

struct PrimePower {
  u64 prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Ascending by prime; product of prime^exponent reconstructs n. factorize(1)
// is empty. Trial division handles small factors, larger cofactors are split
// with a deterministic primality test plus Brent's cycle finder.
using Factorization = std::vector<PrimePower>;
Factorization factorize(u64 n);

u64 reconstruct(const Factorization& factors);

// All b >= 1 with b^e dividing n, ascending. e = 1 gives the divisor list.
std::vector<u64> power_divisors(u64 n, int e);

// d(n; i, j) = #{(b, c) : b^i * c^j divides n}, counted by iterating b over
// power_divisors(n, i) and summing the c-counts of the cofactors.
u64 count_factorizations(u64 n, int i, int j);

// True when no prime divides n to the t-th power (t >= 2).
bool is_power_free(u64 n, int t);

// Ascending primes p <= x.
std::vector<u64> primes_up_to(double x);

}  // namespace gpfree::arith
