#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gpfree/gp_model.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gpfree;
using support::thrown_code;

TEST_CASE("make_progression canonicalizes") {
  CHECK(make_progression(1, 2, 4, 6) == GeomProgression{1, 1, 2, 6});
  CHECK(make_progression(3, 2, 1, 5) == GeomProgression{3, 1, 2, 5});
  CHECK(make_progression(4, 6, 10, 3) == GeomProgression{4, 3, 5, 3});

  CHECK(thrown_code([] { make_progression(1, 2, 2, 6); }) == errc::ratio_trivial);
  CHECK(thrown_code([] { make_progression(1, 1, 2, 2); }) == errc::invalid_argument);
  CHECK(thrown_code([] { make_progression(0, 1, 2, 3); }) == errc::invalid_argument);
  CHECK(thrown_code([] { make_progression(1, 0, 2, 3); }) == errc::invalid_argument);
  CHECK(thrown_code([] { make_progression(1, 1, 2, 65); }) == errc::overflow);
}

TEST_CASE("terms ascend strictly and match the closed form") {
  CHECK(terms({1, 1, 2, 6}) == std::vector<u64>{1, 2, 4, 8, 16, 32});
  CHECK(terms({1, 2, 3, 3}) == std::vector<u64>{4, 6, 9});

  GeomProgression p = make_progression(5, 3, 7, 5);
  auto ts = terms(p);
  CHECK(ts.size() == 5);
  CHECK(ts.front() == p.min_term());
  CHECK(ts.back() == p.max_term());
  for (int t = 0; t < p.len; ++t) {
    CHECK(ts[t] == p.term(t));
    if (t > 0) CHECK(ts[t - 1] < ts[t]);
  }
}

TEST_CASE("middle_terms picks the two central terms of even lengths") {
  MiddlePair mid = middle_terms({1, 1, 2, 6});
  CHECK(mid.lower == 4);
  CHECK(mid.upper == 8);
  mid = middle_terms({2, 1, 2, 6});
  CHECK(mid.lower == 8);
  CHECK(mid.upper == 16);
  mid = middle_terms({1, 2, 3, 4});
  CHECK(mid.lower == 12);  // 8, 12, 18, 27
  CHECK(mid.upper == 18);
  CHECK(thrown_code([] { middle_terms({1, 1, 2, 5}); }) == errc::odd_length);
}

TEST_CASE("length functions") {
  LengthFunction c6 = LengthFunction::constant(6);
  CHECK(c6(1) == 6.0);
  CHECK(c6(1'000'000'000) == 6.0);
  CHECK(thrown_code([] { LengthFunction::constant(2.9); }) == errc::invalid_argument);

  LengthFunction e = LengthFunction::eps_log(0.5);
  CHECK(e(1) == 3.0);  // clamped at 3
  CHECK(e(403) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(e(1u << 30) == doctest::Approx(0.5 * std::log(double(1u << 30))));
  CHECK(thrown_code([] { LengthFunction::eps_log(0.0); }) == errc::invalid_argument);

  LengthFunction t = LengthFunction::table({{1, 6}, {100, 8}, {10000, 8}});
  CHECK(t(1) == 6.0);
  CHECK(t(99) == 6.0);
  CHECK(t(100) == 8.0);
  CHECK(t(1u << 31) == 8.0);
  CHECK(thrown_code([] { LengthFunction::table({{1, 8}, {100, 6}}); }) ==
        errc::not_ascending);  // decreasing values
  CHECK(thrown_code([] { LengthFunction::table({{1, 6}, {100, 7}, {100, 8}}); }) ==
        errc::not_ascending);  // thresholds must strictly ascend
  CHECK(thrown_code([] { LengthFunction::table({{5, 6}}); }) ==
        errc::invalid_argument);  // must cover n = 1
  CHECK(thrown_code([] { LengthFunction::table({}); }) == errc::invalid_argument);
}

TEST_CASE("normalization rounds up, evens down, clamps at 6") {
  CHECK(LengthFunction::constant(7.3).normalized()(10) == 8.0);
  CHECK(LengthFunction::constant(9).normalized()(10) == 8.0);
  CHECK(LengthFunction::constant(6.5).normalized()(10) == 6.0);
  CHECK(LengthFunction::constant(3).normalized()(10) == 6.0);
  CHECK(normalize_length_function(LengthFunction::constant(7.3))(1) == 8.0);

  LengthFunction e = LengthFunction::eps_log(1.2).normalized();
  for (u64 n : {u64(1), u64(100), u64(100000), u64(1) << 40}) {
    double v = e(n);
    double raw = std::max(3.0, 1.2 * std::log(double(n)));
    CHECK(v >= 6.0);
    CHECK(std::fmod(v, 2.0) == 0.0);
    CHECK(v <= std::max(6.0, std::ceil(raw)));
    CHECK(v >= std::min(6.0, raw));
  }
}

TEST_CASE("process readiness") {
  CHECK(LengthFunction::constant(6).process_ready());
  CHECK(LengthFunction::constant(8).process_ready());
  CHECK_FALSE(LengthFunction::constant(7).process_ready());
  CHECK_FALSE(LengthFunction::constant(6.5).process_ready());
  CHECK_FALSE(LengthFunction::eps_log(0.5).process_ready());
  CHECK(LengthFunction::eps_log(0.5).normalized().process_ready());
  CHECK(LengthFunction::table({{1, 6}, {10, 10}}).process_ready());
  CHECK_FALSE(LengthFunction::table({{1, 6}, {10, 9}}).process_ready());

  CHECK(LengthFunction::constant(6).even_value(5) == 6);
  CHECK(LengthFunction::eps_log(1.0).normalized().even_value(1u << 20) == 14);
  CHECK(thrown_code([] { LengthFunction::constant(7).even_value(5); }) ==
        errc::not_process_ready);
}

TEST_CASE("describe strings are stable") {
  CHECK(LengthFunction::constant(6).describe() == "const:6");
  CHECK(LengthFunction::eps_log(0.5).normalized().describe() == "epslog:0.5:normalized");
  CHECK(GapFunction::constant(10).describe() == "const:10");
}

TEST_CASE("gap functions") {
  CHECK(GapFunction::constant(2.5)(7) == 2.5);
  CHECK(thrown_code([] { GapFunction::constant(0); }) == errc::invalid_argument);

  GapFunction pw = GapFunction::power(0.8);
  CHECK(pw(4) == doctest::Approx(std::pow(4.0, 0.8)));
  CHECK(thrown_code([] { GapFunction::power(1.0); }) == errc::invalid_argument);
  CHECK(thrown_code([] { GapFunction::power(0.0); }) == errc::invalid_argument);

  GapFunction el = GapFunction::exp_log_ratio(1.0);
  CHECK(el(2) == el(16));  // clamped below 16
  CHECK(el(1) == el(16));
  double at100 = std::exp(std::log(100.0) / std::log(std::log(100.0)));
  CHECK(el(100) == doctest::Approx(at100));
  CHECK(el(1u << 20) > el(100));  // nondecreasing beyond the clamp

  GapFunction tb = GapFunction::table({{1, 1}, {50, 4.5}});
  CHECK(tb(49) == 1.0);
  CHECK(tb(50) == 4.5);
  CHECK(thrown_code([] { GapFunction::table({{2, 1}}); }) ==
        errc::invalid_argument);  // must cover n = 1
  CHECK(thrown_code([] { GapFunction::table({{1, 2}, {50, 1}}); }) ==
        errc::not_ascending);
}

TEST_CASE("canonical order sorts by min term, then max, then shape") {
  GeomProgression a = make_progression(1, 1, 2, 6);   // 1 .. 32
  GeomProgression b = make_progression(1, 1, 2, 7);   // 1 .. 64
  GeomProgression c = make_progression(2, 1, 2, 6);   // 2 .. 64
  GeomProgression d = make_progression(1, 2, 3, 6);   // 32 .. 243
  CHECK(canonical_less(a, b));
  CHECK(canonical_less(b, c));  // same min term 1, smaller max term first
  CHECK(canonical_less(c, d));
  CHECK_FALSE(canonical_less(a, a));
}

TEST_CASE("family enumeration matches frozen windows") {
  LengthFunction c6 = LengthFunction::constant(6);
  CHECK(enumerate_gk(16, c6).empty());
  CHECK(enumerate_gk(32, c6) == std::vector<GeomProgression>{{1, 1, 2, 6}});
  CHECK(enumerate_gk(64, c6) ==
        std::vector<GeomProgression>{{1, 1, 2, 6}, {1, 1, 2, 7}, {2, 1, 2, 6}});
}

TEST_CASE("family enumeration agrees with the pair-extension oracle") {
  for (double kv : {6.0, 8.0}) {
    LengthFunction k = LengthFunction::constant(kv);
    auto expect = oracles::oracle_gk(400, k);
    CHECK(enumerate_gk(400, k) == expect);
  }
  // A varying threshold exercises the per-term cutoff.
  LengthFunction e = LengthFunction::eps_log(1.1);
  CHECK(enumerate_gk(300, e) == oracles::oracle_gk(300, e));
}

TEST_CASE("scan_gk stops when the visitor declines") {
  int visits = 0;
  scan_gk(4096, LengthFunction::constant(6), [&](const GeomProgression&) {
    ++visits;
    return false;
  });
  CHECK(visits == 1);
}

TEST_CASE("sub_progressions lists exactly the proper geometric subsets") {
  auto subs = sub_progressions(make_progression(1, 1, 2, 6));
  CHECK(subs.size() == 11);

  CHECK(sub_progressions(make_progression(1, 1, 2, 3)).empty());
  CHECK(sub_progressions(make_progression(1, 1, 2, 4)) ==
        std::vector<GeomProgression>{{1, 1, 2, 3}, {2, 1, 2, 3}});

  for (const GeomProgression& p :
       {make_progression(1, 1, 2, 8), make_progression(3, 2, 3, 6),
        make_progression(1, 1, 3, 5), make_progression(2, 3, 4, 7)}) {
    auto got = sub_progressions(p);
    // Oracle: chains of length >= 3 inside the term set, minus p itself.
    auto ts = terms(p);
    std::set<u64> tset(ts.begin(), ts.end());
    std::set<std::array<u64, 4>> expect;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        u64 g = std::gcd(ts[i], ts[j]);
        u64 B = ts[i] / g, C = ts[j] / g;
        std::vector<u64> chain{ts[i], ts[j]};
        while (chain.back() % B == 0 && tset.count(chain.back() / B * C))
          chain.push_back(chain.back() / B * C);
        for (int m = 3; m <= static_cast<int>(chain.size()); ++m) {
          u64 a = chain[0];  // chain[0] = a * B^(m-1)
          for (int t = 0; t < m - 1; ++t) a /= B;
          GeomProgression q = make_progression(a, B, C, m);
          if (!(q == p)) expect.insert({q.a, q.b, q.c, u64(q.len)});
        }
      }
    CHECK(got.size() == expect.size());
    for (const auto& q : got) {
      CHECK(expect.count({q.a, q.b, q.c, u64(q.len)}) == 1);
      // every term of q appears among p's terms
      for (u64 t : terms(q)) CHECK(tset.count(t) == 1);
    }
  }
}

TEST_CASE("minimality") {
  LengthFunction c6 = LengthFunction::constant(6);
  CHECK(is_minimal(make_progression(1, 1, 2, 6), c6));
  CHECK_FALSE(is_minimal(make_progression(1, 1, 2, 7), c6));
  CHECK(enumerate_gk_star(64, c6) ==
        std::vector<GeomProgression>{{1, 1, 2, 6}, {2, 1, 2, 6}});

  for (const auto& p : enumerate_gk(2048, c6))
    CHECK(is_minimal(p, c6) == oracles::oracle_is_minimal(p, c6));

  LengthFunction e = LengthFunction::eps_log(1.1);
  for (const auto& p : enumerate_gk(600, e))
    CHECK(is_minimal(p, e) == oracles::oracle_is_minimal(p, e));
}

TEST_CASE("integer constant thresholds pin minimal members to that length") {
  LengthFunction c6 = LengthFunction::constant(6);
  for (const auto& p : enumerate_gk_star(4096, c6)) CHECK(p.len == 6);

  LengthFunction e = LengthFunction::eps_log(1.2).normalized();
  auto star = enumerate_gk_star(3000, e);
  CHECK(!star.empty());
  for (const auto& p : star) CHECK(p.len == e.even_value(p.max_term()));
}
