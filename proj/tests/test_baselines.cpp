#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gpfree/baselines.hpp"
#include "gpfree/arith.hpp"
#include "support.hpp"

using namespace gpfree;
using support::thrown_code;

TEST_CASE("power-free sieve") {
  CHECK(sieve_power_free(30, 2).count() == 19);
  CHECK(sieve_power_free(30, 3).count() == 26);
  CHECK(sieve_power_free(1, 2).members() == std::vector<u64>{1});

  for (int t : {2, 3}) {
    SequenceWindow w = sieve_power_free(2000, t);
    for (u64 m = 1; m <= 2000; ++m)
      CHECK(w.contains(m) == arith::is_power_free(m, t));
  }

  CHECK(thrown_code([] { sieve_power_free(10, 1); }) == errc::invalid_argument);
}

TEST_CASE("variable threshold") {
  CHECK(variable_k(1.0, 1) == 3.0);
  CHECK(variable_k(1.0, 20) == 3.0);  // ln 20 < 3
  CHECK(variable_k(1.0, 21) == doctest::Approx(std::log(21.0)));
  CHECK(variable_k(0.5, 1000000) == doctest::Approx(0.5 * std::log(1e6)));
  for (u64 m = 1; m < 100; ++m) CHECK(variable_k(0.7, m) <= variable_k(0.7, m + 1));
}

TEST_CASE("variable sieve on a small window") {
  KFreeResult r = sieve_variable_kfree(32, 1.0);
  CHECK(r.window.excluded_rle() ==
        std::vector<std::pair<u64, u64>>{{8, 1}, {16, 1}, {32, 1}});
  REQUIRE(r.witnesses.size() == 3);
  CHECK(r.witnesses[0] == KFreeWitness{8, 2, 3});
  CHECK(r.witnesses[1] == KFreeWitness{16, 2, 3});
  CHECK(r.witnesses[2] == KFreeWitness{32, 2, 4});
  // 24 stays: the threshold there is ceil(ln 24) = 4 and 2^4 does not divide 24.
  CHECK(r.window.contains(24));
  CHECK(r.window.contains(27));

  CHECK(sieve_variable_kfree(7, 1.0).window.count() == 7);
}

TEST_CASE("variable sieve agrees with a full prime scan") {
  const double eps = 0.9;
  KFreeResult r = sieve_variable_kfree(5000, eps);
  std::size_t wi = 0;
  for (u64 m = 1; m <= 5000; ++m) {
    int need = static_cast<int>(std::ceil(variable_k(eps, m)));
    u64 witness = 0;
    for (u64 p : arith::primes_up_to(std::pow(double(m), 1.0 / need) + 1)) {
      auto q = arith::pow_if_fits(p, need);
      if (q && *q <= m && m % *q == 0) {
        witness = p;
        break;
      }
    }
    CHECK(r.window.contains(m) == (witness == 0));
    if (witness != 0) {
      REQUIRE(wi < r.witnesses.size());
      CHECK(r.witnesses[wi].m == m);
      CHECK(r.witnesses[wi].p == witness);
      CHECK(r.witnesses[wi].exponent == need);
      ++wi;
    }
  }
  CHECK(wi == r.witnesses.size());
}

TEST_CASE("epsilon prime set") {
  CHECK(epsilon_prime_set(1.0) == std::vector<u64>{2});
  CHECK(epsilon_prime_set(0.5) == std::vector<u64>{2, 3, 5, 7});
  CHECK(epsilon_prime_set(2.0).empty());
  CHECK(thrown_code([] { epsilon_prime_set(0.0); }) == errc::invalid_argument);
}
