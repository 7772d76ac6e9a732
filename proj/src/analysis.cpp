#include "gpfree/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gpfree/parallel.hpp"

namespace gpfree {

namespace {

constexpr double kLn2 = 0.6931471805599453;

bool contained(const SequenceWindow& w, const GeomProgression& p) {
  u64 cur = arith::checked_mul(p.a, arith::checked_pow(p.b, p.len - 1));
  if (!w.contains(cur)) return false;
  for (int t = 1; t < p.len; ++t) {
    cur = cur / p.b * p.c;
    if (!w.contains(cur)) return false;
  }
  return true;
}

nlohmann::json progression_brief(const GeomProgression& p) {
  return {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"len", p.len}};
}

int even_k_at(const LengthFunction& k, u64 n) {
  double v = k(n);
  long long r = std::llround(v);
  if (std::abs(v - static_cast<double>(r)) > 1e-9 || r < 6 || r % 2 != 0)
    fail(errc::not_process_ready, "k must evaluate to an even integer >= 6 here");
  return static_cast<int>(r);
}

}  // namespace

std::optional<GeomProgression> verify_gp_free(const SequenceWindow& w,
                                              const LengthFunction& k, GpCheckMode mode) {
  const LengthFunction eff = mode == GpCheckMode::definitional
                                 ? LengthFunction::constant(std::max(3.0, k(w.n())))
                                 : k;
  std::optional<GeomProgression> found;
  scan_gk(w.n(), eff, [&](const GeomProgression& p) {
    if (contained(w, p) && (!found || canonical_less(p, *found))) found = p;
    return true;
  });
  return found;
}

GapReport gap_report(const SequenceWindow& w, const GapFunction& h) {
  if (w.count() == 0) fail(errc::empty_window, "gap report over empty window");
  GapReport rep;
  rep.n = w.n();

  u64 prev = 0;
  bool have_prev = false;
  w.for_each_member([&](u64 m) {
    if (!have_prev) {
      rep.lead_gap = m;
      have_prev = true;
    } else {
      u64 gap = m - prev;
      if (gap > rep.max_gap) {
        rep.max_gap = gap;
        rep.gap_low = prev;
        rep.gap_high = m;
      }
      u64 decade = 1;
      while (decade <= prev / 10) decade *= 10;
      if (rep.per_decade.empty() || rep.per_decade.back().decade_start != decade)
        rep.per_decade.push_back({decade, 0, 0});
      if (gap > rep.per_decade.back().max_gap) {
        rep.per_decade.back().max_gap = gap;
        rep.per_decade.back().at = prev;
      }
    }
    prev = m;
  });
  rep.trail_gap = rep.n + 1 - prev;

  // max over m in [1, n] of (next member >= m, or n+1) - m; the maximum sits
  // right after a member (or at 1), so it is one less than the widest of the
  // interior and boundary gaps.
  u64 max_dist = std::max({rep.lead_gap - 1, rep.max_gap == 0 ? 0 : rep.max_gap - 1,
                           rep.trail_gap - 1});
  rep.fitted_c = static_cast<double>(max_dist + 1) / h(rep.n);
  return rep;
}

LemmaCheckResult lemma5_check(u64 n, u64 max_n, const LengthFunction& k,
                              const std::vector<GeomProgression>& star) {
  int kn = even_k_at(k, n);
  int half = kn / 2;
  auto needed = half < 63 ? arith::mul_if_fits(n, 1ull << half) : std::nullopt;
  if (!needed || *needed > max_n)
    fail(errc::window_too_small, "need max_n >= n * 2^(k(n)/2)");

  LemmaCheckResult res;
  res.claim = "lemma5.count";
  res.params = {{"n", n}, {"max_n", max_n}, {"k", k.describe()}};
  res.witness = nullptr;

  struct Triple {
    u64 a, b, c;
    auto operator<=>(const Triple&) const = default;
  };
  std::set<Triple> seen;
  u64 count = 0;
  bool injective = true;
  nlohmann::json matches = nlohmann::json::array();
  for (const GeomProgression& p : star) {
    if (p.len % 2 != 0) continue;
    MiddlePair mid = middle_terms(p);
    if (mid.lower != n && mid.upper != n) continue;
    ++count;
    int e = (p.len - kn) / 2;
    u64 base = arith::checked_mul(p.a, arith::checked_pow(arith::checked_mul(p.b, p.c), e));
    Triple t = mid.upper == n ? Triple{base, p.c, p.b} : Triple{base, p.b, p.c};
    u64 rebuilt = arith::checked_mul(
        arith::checked_mul(t.a, arith::checked_pow(t.b, half)),
        arith::checked_pow(t.c, half - 1));
    if (rebuilt != n) fail(errc::invalid_argument, "factorization map failed to rebuild n");
    if (!seen.insert(t).second) {
      injective = false;
      res.witness = {{"duplicate_triple", {t.a, t.b, t.c}}, {"progression", progression_brief(p)}};
    }
    matches.push_back({{"progression", progression_brief(p)},
                       {"triple", {t.a, t.b, t.c}},
                       {"side", mid.upper == n ? "upper" : "lower"}});
  }
  u64 d = arith::count_factorizations(n, half, half - 1);
  res.params["matches"] = matches;
  res.params["injective"] = injective;
  res.lhs = static_cast<double>(count);
  res.rhs = static_cast<double>(d);
  res.holds = injective && count <= d;
  if (!res.holds && res.witness.is_null())
    res.witness = {{"count", count}, {"d", d}};
  return res;
}

LemmaCheckResult lemma5_check(u64 n, u64 max_n, const LengthFunction& k) {
  return lemma5_check(n, max_n, k, enumerate_gk_star(max_n, k));
}

LemmaCheckResult middle_separation(u64 max_n, const LengthFunction& k, u64 x) {
  LemmaCheckResult res;
  res.claim = "lemma6.separation";
  res.params = {{"max_n", max_n}, {"k", k.describe()}, {"x", x}};
  res.witness = nullptr;

  u64 qualifying = 0;
  u64 min_sep = 0;
  std::optional<GeomProgression> argmin;
  for (const GeomProgression& p : enumerate_gk_star(max_n, k)) {
    if (p.len % 2 != 0) continue;
    MiddlePair mid = middle_terms(p);
    if (mid.lower < x) continue;
    ++qualifying;
    u64 sep = mid.upper - mid.lower;
    if (!argmin || sep < min_sep) {
      min_sep = sep;
      argmin = p;
    }
  }
  double kx = k(x);
  res.rhs = std::pow(static_cast<double>(x), 1.0 - 1.0 / (kx - 1.0));
  res.params["qualifying"] = qualifying;
  if (!argmin) {
    res.lhs = std::numeric_limits<double>::infinity();
    res.holds = true;  // vacuous
    return res;
  }
  const GeomProgression& p = *argmin;
  int half_less = p.len / 2 - 1;
  u64 chain = arith::checked_mul(
      p.a, arith::checked_mul(arith::checked_pow(p.b, half_less),
                              arith::checked_pow(p.c, half_less)));
  res.params["min_progression"] = progression_brief(p);
  res.params["chain_ab_c"] = chain;
  res.params["chain_x_over_b"] = static_cast<double>(x) / static_cast<double>(p.b);
  res.lhs = static_cast<double>(min_sep);
  res.holds = res.lhs >= res.rhs;
  if (!res.holds) res.witness = progression_brief(p);
  return res;
}

u64 interval_length(u64 x, const GapFunction& h, double c_mult) {
  if (!(c_mult >= 0)) fail(errc::invalid_argument, "C must be nonnegative");
  double raw = c_mult * h(x);
  double snapped = std::abs(raw - std::round(raw)) < 1e-9 ? std::round(raw) : raw;
  double len = std::ceil(snapped);
  if (len < 0 || len > 1e15) fail(errc::invalid_argument, "block length out of range");
  return static_cast<u64>(len);
}

double sum_S(u64 x, const GapFunction& h, const LengthFunction& k, double c_mult) {
  if (x < 1) fail(errc::invalid_argument, "x must be positive");
  int kx = even_k_at(k, x);
  u64 len = interval_length(x, h, c_mult);
  double total = 0;
  for (u64 m = x; m < x + len; ++m) {
    u64 d = arith::count_factorizations(m, kx / 2, kx / 2 - 1);
    total += std::ldexp(1.0, -static_cast<int>(std::min<u64>(d, 4096)));
  }
  return total;
}

LemmaCheckResult interval_miss_mc(u64 x, double c_mult, const GapFunction& h,
                                  const LengthFunction& k, u64 max_n, u64 trials,
                                  u64 seed) {
  if (trials == 0) fail(errc::invalid_argument, "trials must be positive");
  if (!k.process_ready())
    fail(errc::not_process_ready, "process needs even integer lengths >= 6");
  u64 len = interval_length(x, h, c_mult);
  if (x + len - 1 > max_n || x > max_n)
    fail(errc::window_too_small, "block must fit inside [1, max_n]");

  LemmaCheckResult res;
  res.claim = "lemma6.interval_miss";
  res.params = {{"x", x},     {"c", c_mult},       {"h", h.describe()},
                {"k", k.describe()}, {"max_n", max_n}, {"trials", trials},
                {"seed", seed}};
  res.witness = nullptr;

  auto in_block = [&](u64 v) { return v >= x && v < x + len; };
  struct BlockCoin {
    GeomProgression p;
    u64 lower, upper;
  };
  std::vector<BlockCoin> relevant;
  bool independent = true;
  for (const GeomProgression& p : enumerate_gk_star(max_n, k)) {
    MiddlePair mid = middle_terms(p);
    if (in_block(mid.lower) && in_block(mid.upper)) independent = false;
    if (in_block(mid.lower) || in_block(mid.upper))
      relevant.push_back({p, mid.lower, mid.upper});
  }

  u64 misses = parallel_trial_count(trials, [&](u64 t) {
    u64 ts = trial_seed(seed, t);
    // The block is missed when every one of its integers is removed.
    u64 remaining = len;
    std::vector<bool> removed(len, false);
    for (const BlockCoin& bc : relevant) {
      u64 chosen = coin(ts, bc.p) == CoinSide::lower ? bc.lower : bc.upper;
      if (in_block(chosen) && !removed[chosen - x]) {
        removed[chosen - x] = true;
        --remaining;
      }
    }
    return remaining == 0;
  });

  double s = sum_S(x, h, k, c_mult);
  McEstimate mc;
  mc.hits = misses;
  mc.trials = trials;
  mc.estimate = static_cast<double>(misses) / static_cast<double>(trials);
  mc.std_error = std::sqrt(mc.estimate * (1.0 - mc.estimate) / static_cast<double>(trials));

  res.params["independent"] = independent;
  res.params["sum_s"] = s;
  res.params["estimate"] = mc.estimate;
  res.params["std_error"] = mc.std_error;
  res.lhs = mc.estimate;
  res.rhs = std::exp(-s);
  res.holds = mc.estimate - 3.0 * mc.std_error <= res.rhs;
  if (!res.holds)
    res.witness = {{"estimate", mc.estimate}, {"std_error", mc.std_error}, {"bound", res.rhs}};
  return res;
}

LemmaCheckResult lemma7_partition(u64 x, const GapFunction& h, const LengthFunction& k,
                                  double c_mult) {
  int kx = even_k_at(k, x);
  int half = kx / 2;
  double hx = h(x);
  if (!(hx > std::exp(1.0))) fail(errc::requires_h_above_e, "needs h(x) > e");
  u64 len = interval_length(x, h, c_mult);

  LemmaCheckResult res;
  res.claim = "lemma7.partition";
  res.params = {{"x", x}, {"c", c_mult}, {"h", h.describe()}, {"k", k.describe()}};
  res.witness = nullptr;

  std::vector<u64> primes = arith::primes_up_to(hx);
  std::vector<bool> in_a(len, false);
  for (u64 p : primes) {
    auto q = arith::pow_if_fits(p, half - 1);
    if (!q || *q > x + len - 1) continue;
    u64 first = (x + *q - 1) / *q * *q;
    for (u64 m = first; m < x + len; m += *q) in_a[m - x] = true;
  }
  u64 size_a = static_cast<u64>(std::count(in_a.begin(), in_a.end(), true));

  double zeta_part = riemann_zeta(static_cast<double>(half - 1)) - 1.0;
  double size_bound = zeta_part * c_mult * hx + static_cast<double>(primes.size());

  bool smooth_ok = true;
  double log_h = std::log(hx);
  for (u64 m = x; m < x + len && smooth_ok; ++m) {
    if (in_a[m - x]) continue;
    u64 d = arith::count_factorizations(m, half, half - 1);
    double log_m = std::log(static_cast<double>(m));
    double bound = std::exp(kLn2 * (log_m / ((half - 1) * log_h) + log_m / (half * log_h)));
    if (static_cast<double>(d) > bound) {
      smooth_ok = false;
      res.witness = {{"n", m}, {"d", d}, {"smooth_bound", bound}};
    }
  }

  res.params["size_a"] = size_a;
  res.params["pi_h"] = primes.size();
  res.params["smooth_ok"] = smooth_ok;
  res.lhs = static_cast<double>(size_a);
  res.rhs = size_bound;
  res.holds = (res.lhs <= res.rhs) && smooth_ok;
  if (!res.holds && res.witness.is_null())
    res.witness = {{"size_a", size_a}, {"bound", size_bound}};
  return res;
}

double lemma7_bound(u64 x, const GapFunction& h, const LengthFunction& k, double c_mult,
                    double fitted_b) {
  double kx = k(x);
  double hx = h(x);
  if (!(hx > 1.0)) fail(errc::requires_h_above_e, "needs h(x) > 1");
  double inner = std::exp(4.0 * kLn2 * std::log(static_cast<double>(x)) /
                          ((kx - 2.0) * std::log(hx)));
  return fitted_b * c_mult * hx * std::exp(-kLn2 * inner);
}

std::vector<LemmaCheckResult> feasibility_check(const GapFunction& h,
                                                const LengthFunction& k, u64 n_from,
                                                u64 n_to, u64 n_step) {
  if (n_from < 1 || n_to < n_from || n_step < 1)
    fail(errc::invalid_argument, "bad feasibility range");
  struct Form {
    const char* claim;
    double shift;
  };
  std::vector<LemmaCheckResult> out;
  for (Form form : {Form{"theorem3.feasible", 3.0}, Form{"theorem4.feasible", 2.0}}) {
    LemmaCheckResult res;
    res.claim = form.claim;
    res.params = {{"h", h.describe()}, {"k", k.describe()},
                  {"n_from", n_from},  {"n_to", n_to},
                  {"n_step", n_step}};
    res.witness = nullptr;
    double worst_margin = std::numeric_limits<double>::infinity();
    u64 first_fail = 0;
    for (u64 n = n_from; n <= n_to; n += n_step) {
      double hn = h(n);
      double lhs = 0;
      if (hn > 1.0) {
        double lh = std::log(hn);
        lhs = (k(n) - form.shift) * lh * std::log(lh);
      }
      double rhs = 4.0 * kLn2 * std::log(static_cast<double>(n));
      if (lhs - rhs < worst_margin) {
        worst_margin = lhs - rhs;
        res.lhs = lhs;
        res.rhs = rhs;
        res.params["worst_n"] = n;
      }
      if (lhs < rhs && first_fail == 0) first_fail = n;
      if (n > n_to - n_step) break;  // avoid wrap on n += step
    }
    res.holds = first_fail == 0;
    if (first_fail != 0) res.witness = {{"first_failing_n", first_fail}};
    out.push_back(std::move(res));
  }
  return out;
}

double riemann_zeta(double s) {
  if (!(s >= 2.0)) fail(errc::invalid_argument, "zeta argument below 2");
  const int cutoff = 100000;
  long double sum = 0;
  for (int n = cutoff - 1; n >= 1; --n) sum += powl(static_cast<long double>(n), -s);
  long double m = cutoff;
  sum += powl(m, 1 - s) / (s - 1) + powl(m, -s) / 2 + s * powl(m, -s - 1) / 12;
  return static_cast<double>(sum);
}

}  // namespace gpfree
