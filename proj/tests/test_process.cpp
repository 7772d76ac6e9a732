#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>

#include "gpfree/parallel.hpp"
#include "gpfree/process.hpp"
#include "support.hpp"

using namespace gpfree;
using support::thrown_code;

TEST_CASE("mix64 is the splitmix64 output function") {
  // First outputs of the reference generator seeded with 0.
  CHECK(mix64(0) == 0xE220A8397B1DCDAFull);
  CHECK(mix64(0x9E3779B97F4A7C15ull) == 0x6E789E6AA1B965F4ull);
  CHECK(mix64(2 * 0x9E3779B97F4A7C15ull) == 0x06C45D188009454Full);

  std::set<u64> seen;
  for (u64 z = 0; z < 4096; ++z) seen.insert(mix64(z));
  CHECK(seen.size() == 4096);
}

TEST_CASE("trial seeds are derived, not sequential") {
  CHECK(trial_seed(7, 0) == mix64(7 ^ mix64(0)));
  CHECK(trial_seed(7, 1) == mix64(7 ^ mix64(1)));
  std::set<u64> seen;
  for (u64 t = 0; t < 1000; ++t) {
    seen.insert(trial_seed(42, t));
    CHECK(trial_seed(42, t) != trial_seed(43, t));
  }
  CHECK(seen.size() == 1000);
}

TEST_CASE("coin is fair and keyed by seed and progression") {
  GeomProgression p = make_progression(1, 1, 2, 6);
  u64 upper = 0;
  for (u64 seed = 0; seed < 100000; ++seed)
    if (coin(seed, p) == CoinSide::upper) ++upper;
  CHECK(std::abs(upper / 100000.0 - 0.5) < 0.01);

  // Some seed must flip the coin relative to seed 0, and distinct
  // progressions must disagree under some common seed.
  GeomProgression q = make_progression(2, 1, 2, 6);
  bool flips = false, disagrees = false;
  for (u64 seed = 0; seed < 64; ++seed) {
    flips = flips || coin(seed, p) != coin(0, p);
    disagrees = disagrees || coin(seed, p) != coin(seed, q);
  }
  CHECK(flips);
  CHECK(disagrees);
}

TEST_CASE("run_process removes one coin-chosen middle per minimal progression") {
  LengthFunction c6 = LengthFunction::constant(6);

  ProcessResult small = run_process({16, c6, 5});
  CHECK(small.exclusions.empty());
  CHECK(small.window.count() == 16);

  for (u64 seed : {u64(0), u64(1), u64(7), u64(12345)}) {
    ProcessResult r = run_process({64, c6, seed});
    auto star = enumerate_gk_star(64, c6);
    CHECK(r.exclusions.size() == star.size());
    std::set<u64> removed;
    for (std::size_t i = 0; i < star.size(); ++i) {
      const ExclusionRecord& rec = r.exclusions[i];
      CHECK(rec.progression == star[i]);
      MiddlePair mid = middle_terms(rec.progression);
      CHECK(rec.coin == coin(seed, rec.progression));
      CHECK(rec.chosen == (rec.coin == CoinSide::lower ? mid.lower : mid.upper));
      CHECK(std::set<u64>{4, 8, 16}.count(rec.chosen) == 1);
      removed.insert(rec.chosen);
    }
    CHECK(r.window.count() == 64 - removed.size());
    for (u64 m = 1; m <= 64; ++m) CHECK(r.window.contains(m) == !removed.count(m));
  }

  CHECK(thrown_code([] {
          run_process({64, LengthFunction::eps_log(0.5), 0});
        }) == errc::not_process_ready);
}

TEST_CASE("same integer chosen twice still leaves one exclusion") {
  // At 64 the minimal family is (1,1,2,6) with middles (4,8) and (2,1,2,6)
  // with middles (8,16); some seed sends both coins to 8.
  LengthFunction c6 = LengthFunction::constant(6);
  bool found = false;
  for (u64 seed = 0; seed < 1000 && !found; ++seed) {
    ProcessResult r = run_process({64, c6, seed});
    if (r.exclusions.size() == 2 && r.exclusions[0].chosen == 8 &&
        r.exclusions[1].chosen == 8) {
      found = true;
      CHECK(r.window.count() == 63);
      CHECK_FALSE(r.window.contains(8));
      CHECK(r.window.contains(4));
      CHECK(r.window.contains(16));
    }
  }
  CHECK(found);
}

TEST_CASE("process output is reproducible and seed-sensitive") {
  LengthFunction c6 = LengthFunction::constant(6);
  ProcessResult a = run_process({2048, c6, 99});
  ProcessResult b = run_process({2048, c6, 99});
  CHECK(a.window == b.window);
  CHECK(a.exclusions == b.exclusions);

  bool differs = false;
  for (u64 seed = 100; seed < 110 && !differs; ++seed)
    differs = !(run_process({2048, c6, seed}).window == a.window);
  CHECK(differs);
}

TEST_CASE("membership probability anchors") {
  LengthFunction c6 = LengthFunction::constant(6);

  McEstimate prime = membership_probability(31, 64, c6, 2000, 9);
  CHECK(prime.estimate == 1.0);
  CHECK(prime.std_error == 0.0);
  CHECK(prime.hits == prime.trials);

  McEstimate eight = membership_probability(8, 64, c6, 40000, 1);
  CHECK(std::abs(eight.estimate - 0.25) <= 3 * eight.std_error);
  CHECK(eight.std_error == doctest::Approx(std::sqrt(eight.estimate *
                                                     (1 - eight.estimate) / 40000.0)));

  McEstimate four = membership_probability(4, 32, c6, 40000, 2);
  CHECK(std::abs(four.estimate - 0.5) <= 3 * four.std_error);
}

TEST_CASE("fast path equals running the full process per trial") {
  LengthFunction c6 = LengthFunction::constant(6);
  const u64 max_n = 256, trials = 400, seed = 11;
  auto star = enumerate_gk_star(max_n, c6);
  for (u64 n : {u64(4), u64(8), u64(16), u64(64), u64(100)}) {
    McEstimate fast = membership_probability(n, star, trials, seed);
    u64 hits = 0;
    for (u64 t = 0; t < trials; ++t)
      if (run_process({max_n, c6, trial_seed(seed, t)}).window.contains(n)) ++hits;
    CHECK(fast.hits == hits);
    CHECK(fast.trials == trials);
  }
}

TEST_CASE("trial counting is independent of the worker split") {
  auto pred = [](u64 t) { return mix64(t) % 3 == 0; };
  u64 serial, parallel;
  setenv("GPFREE_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  serial = parallel_trial_count(50000, pred);
  setenv("GPFREE_THREADS", "5", 1);
  CHECK(worker_count() == 5);
  parallel = parallel_trial_count(50000, pred);
  unsetenv("GPFREE_THREADS");
  CHECK(serial == parallel);
}
