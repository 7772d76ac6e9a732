#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gpfree/gp_model.hpp"
#include "gpfree/process.hpp"
#include "gpfree/window.hpp"

namespace gpfree {

struct LemmaCheckResult {
  std::string claim;
  nlohmann::json params;  // inputs, plus any reported side values
  double lhs = 0;
  double rhs = 0;
  bool holds = false;
  nlohmann::json witness;  // counterexample details, null when none

  friend bool operator==(const LemmaCheckResult&, const LemmaCheckResult&) = default;
};

enum class GpCheckMode {
  family,        // any member of G_k contained in the window
  definitional,  // any progression of length >= k(n) contained in the window
};

// Least contained progression in canonical order, or nullopt when the window
// is progression-free in the requested sense.
std::optional<GeomProgression> verify_gp_free(const SequenceWindow& w,
                                              const LengthFunction& k, GpCheckMode mode);

struct DecadeGap {
  u64 decade_start = 0;
  u64 max_gap = 0;
  u64 at = 0;  // left member of the widest gap in this decade
};

struct GapReport {
  u64 n = 0;
  u64 max_gap = 0;  // widest interior gap between consecutive members
  u64 gap_low = 0;  // its endpoints
  u64 gap_high = 0;
  u64 lead_gap = 0;   // first member - 0
  u64 trail_gap = 0;  // (n + 1) - last member
  // Smallest C such that every block {m, ..., m + ceil(C h(n)) - 1}, m <= n,
  // meets the window: (max over m of distance to the next member, + 1) / h(n).
  double fitted_c = 0;
  std::vector<DecadeGap> per_decade;  // interior gaps grouped by the decade of
                                      // their left endpoint
};

GapReport gap_report(const SequenceWindow& w, const GapFunction& h);

// Counts minimal progressions within [1, max_n] having n as a middle term and
// compares against d(n; k(n)/2, k(n)/2 - 1); also maps each such progression
// (a_i, b_i, c_i, L) to the factorization triple
//   (a_i (b_i c_i)^((L - k(n))/2), b_i, c_i)   when n is the lower middle,
//   (a_i (b_i c_i)^((L - k(n))/2), c_i, b_i)   when n is the upper middle,
// and verifies the triples stay pairwise distinct. Requires a process-ready k
// and max_n >= n * 2^(k(n)/2).
LemmaCheckResult lemma5_check(u64 n, u64 max_n, const LengthFunction& k);
LemmaCheckResult lemma5_check(u64 n, u64 max_n, const LengthFunction& k,
                              const std::vector<GeomProgression>& star);

// Minimum of (upper - lower) over minimal progressions in [1, max_n] whose
// lower middle term is >= x, compared against x^(1 - 1/(k(x) - 1)).
// Vacuously true when nothing qualifies. Odd-length members carry no middle
// pair and are skipped.
LemmaCheckResult middle_separation(u64 max_n, const LengthFunction& k, u64 x);

// ceil(C * h(x)), the number of integers in the block starting at x. Values
// within 1e-9 of an integer are snapped before rounding up.
u64 interval_length(u64 x, const GapFunction& h, double c_mult);

// sum over n in {x, ..., x + ceil(C h(x)) - 1} of 2^(-d(n; k/2, k/2 - 1)),
// with k = k(x) (an even integer >= 6) and h = h(x).
double sum_S(u64 x, const GapFunction& h, const LengthFunction& k, double c_mult);

// Monte Carlo estimate of P[the process output misses {x, ..., x + ceil(C
// h(x)) - 1} entirely], compared against exp(-sum_S): holds when
// estimate - 3 SE <= exp(-sum_S). Reports whether any minimal progression has
// both middle terms inside the block; the bound is only meaningful when none
// does (params carry "independent").
LemmaCheckResult interval_miss_mc(u64 x, double c_mult, const GapFunction& h,
                                  const LengthFunction& k, u64 max_n, u64 trials,
                                  u64 seed);

// Splits the block at x into A = {n : some prime p <= h(x) has p^(k/2-1) | n}
// and its complement. Checks |A| <= (zeta(k/2-1) - 1) C h + pi(h) and, for
// every n outside A,
//   d(n; k/2, k/2-1) <= exp(ln 2 (ln n / ((k/2-1) ln h) + ln n / ((k/2) ln h))).
// Requires h(x) > e.
LemmaCheckResult lemma7_partition(u64 x, const GapFunction& h, const LengthFunction& k,
                                  double c_mult);

// B C h(x) exp(-ln 2 * exp(4 ln 2 ln x / ((k(x) - 2) ln h(x)))).
double lemma7_bound(u64 x, const GapFunction& h, const LengthFunction& k, double c_mult,
                    double fitted_b);

// Pointwise feasibility of the two hypothesis forms over n in
// [n_from, n_to] stepped by n_step:
//   (k(n) - 3) ln h(n) ln ln h(n) >= 4 ln 2 ln n
//   (k(n) - 2) ln h(n) ln ln h(n) >= 4 ln 2 ln n
// One result per form; lhs/rhs are taken at the point of smallest margin and
// the witness names the first failing n, if any. h(n) <= 1 contributes a zero
// left side.
std::vector<LemmaCheckResult> feasibility_check(const GapFunction& h,
                                                const LengthFunction& k, u64 n_from,
                                                u64 n_to, u64 n_step = 1);

// Truncated series plus tail correction, absolute error well under 1e-12 for
// real s >= 2.
double riemann_zeta(double s);

}  // namespace gpfree
