#include "gpfree/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gpfree::arith {

namespace {

constexpr u64 kTrialLimit = 1'000'000;

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool miller_rabin(u64 n, u64 a) {
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Brent's variant of Pollard's cycle finder with a fixed polynomial sequence,
// so the factor found for a given n never varies.
u64 brent_factor(u64 n) {
  if ((n & 1) == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    u64 q = 1;
    u64 ys = 0;
    const u64 m = 128;
    for (u64 r = 1; d == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && d == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
    }
    if (d == n) {
      do {
        ys = (mulmod(ys, ys, n) + c) % n;
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void split(u64 n, std::vector<u64>& primes_out) {
  while (n > 1) {
    if (is_prime(n)) {
      primes_out.push_back(n);
      return;
    }
    u64 d = brent_factor(n);
    split(d, primes_out);
    n /= d;
  }
}

}  // namespace

u64 checked_add(u64 x, u64 y) {
  u64 r;
  if (__builtin_add_overflow(x, y, &r)) fail(errc::overflow, "add");
  return r;
}

u64 checked_mul(u64 x, u64 y) {
  u64 r;
  if (__builtin_mul_overflow(x, y, &r)) fail(errc::overflow, "mul");
  return r;
}

u64 checked_pow(u64 base, int exp) {
  if (exp < 0) fail(errc::invalid_argument, "negative exponent");
  u64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

std::optional<u64> mul_if_fits(u64 x, u64 y) noexcept {
  u64 r;
  if (__builtin_mul_overflow(x, y, &r)) return std::nullopt;
  return r;
}

std::optional<u64> pow_if_fits(u64 base, int exp) noexcept {
  u64 r = 1;
  for (int i = 0; i < exp; ++i) {
    auto next = mul_if_fits(r, base);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  // This witness set is exact for every 64-bit input.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (!miller_rabin(n, a)) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) fail(errc::invalid_argument, "factorize(0)");
  Factorization out;
  auto strip = [&](u64 p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.push_back({p, e});
  };
  strip(2);
  for (u64 d = 3; d <= kTrialLimit && d * d <= n; d += 2) strip(d);
  if (n > 1) {
    if (n / kTrialLimit < kTrialLimit || is_prime(n)) {
      // Cofactor below the trial bound squared is necessarily prime here.
      out.push_back({n, 1});
    } else {
      std::vector<u64> rest;
      split(n, rest);
      std::sort(rest.begin(), rest.end());
      for (std::size_t i = 0; i < rest.size();) {
        std::size_t j = i;
        while (j < rest.size() && rest[j] == rest[i]) ++j;
        out.push_back({rest[i], static_cast<int>(j - i)});
        i = j;
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& x, const PrimePower& y) { return x.prime < y.prime; });
  return out;
}

u64 reconstruct(const Factorization& factors) {
  u64 n = 1;
  for (const auto& pp : factors) n = checked_mul(n, checked_pow(pp.prime, pp.exponent));
  return n;
}

std::vector<u64> power_divisors(u64 n, int e) {
  if (n == 0) fail(errc::invalid_argument, "power_divisors(0)");
  if (e < 1) fail(errc::invalid_argument, "power_divisors exponent < 1");
  std::vector<u64> out{1};
  for (const auto& pp : factorize(n)) {
    int cap = pp.exponent / e;
    if (cap == 0) continue;
    std::size_t base = out.size();
    u64 q = 1;
    for (int k = 1; k <= cap; ++k) {
      q *= pp.prime;  // q^e divides n, so q fits
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * q);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

u64 count_factorizations(u64 n, int i, int j) {
  if (i < 1 || j < 1) fail(errc::invalid_argument, "count_factorizations exponents");
  u64 total = 0;
  for (u64 b : power_divisors(n, i)) {
    u64 bi = checked_pow(b, i);
    total += power_divisors(n / bi, j).size();
  }
  return total;
}

bool is_power_free(u64 n, int t) {
  if (t < 2) fail(errc::invalid_argument, "power-free threshold < 2");
  for (const auto& pp : factorize(n)) {
    if (pp.exponent >= t) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(double x) {
  std::vector<u64> out;
  if (!(x >= 2.0)) return out;
  if (x > 1e9) fail(errc::invalid_argument, "prime sieve bound above 1e9");
  u64 limit = static_cast<u64>(std::floor(x));
  std::vector<bool> composite(limit + 1, false);
  for (u64 p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    if (p <= limit / p) {
      for (u64 m = p * p; m <= limit; m += p) composite[m] = true;
    }
  }
  return out;
}

}  // namespace gpfree::arith
