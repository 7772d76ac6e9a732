#include "gpfree/baselines.hpp"

#include <cmath>

#include "gpfree/arith.hpp"

namespace gpfree {

SequenceWindow sieve_power_free(u64 n, int t) {
  if (t < 2) fail(errc::invalid_argument, "power-free threshold < 2");
  SequenceWindow w = SequenceWindow::full(n);
  double root = std::pow(static_cast<double>(n), 1.0 / t);
  for (u64 p : arith::primes_up_to(root + 2)) {
    auto q = arith::pow_if_fits(p, t);
    if (!q || *q > n) continue;
    for (u64 m = *q; m <= n; m += *q) w.erase(m);
  }
  return w;
}

double variable_k(double eps, u64 m) {
  return std::max(3.0, eps * std::log(static_cast<double>(m)));
}

KFreeResult sieve_variable_kfree(u64 n, double eps) {
  if (!(eps > 0.0)) fail(errc::invalid_argument, "eps must be positive");
  KFreeResult result;
  result.window = SequenceWindow::full(n);

  // Candidate primes: ln p <= 1/eps with a whisker of tolerance, so an exact
  // boundary prime (p^k(m) = m) is still caught.
  std::vector<u64> candidates;
  for (u64 p : arith::primes_up_to(std::exp(1.0 / eps) + 1)) {
    if (std::log(static_cast<double>(p)) <= 1.0 / eps + 1e-9) candidates.push_back(p);
  }

  for (u64 m = 1; m <= n; ++m) {
    int need = static_cast<int>(std::ceil(variable_k(eps, m)));
    for (u64 p : candidates) {
      auto q = arith::pow_if_fits(p, need);
      if (!q || *q > m) continue;
      if (m % *q == 0) {
        result.window.erase(m);
        result.witnesses.push_back({m, p, need});
        break;
      }
    }
  }
  return result;
}

std::vector<u64> epsilon_prime_set(double eps) {
  if (!(eps > 0.0)) fail(errc::invalid_argument, "eps must be positive");
  double limit = std::exp(1.0 / eps);
  std::vector<u64> out;
  for (u64 p : arith::primes_up_to(limit + 1)) {
    if (static_cast<double>(p) < limit) out.push_back(p);
  }
  return out;
}

}  // namespace gpfree
