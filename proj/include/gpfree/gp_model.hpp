#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "gpfree/arith.hpp"
#include "gpfree/errors.hpp"

namespace gpfree {

using arith::u64;

// Geometric progression in canonical form: gcd(b, c) = 1, b < c, len >= 3.
// Term t (0-based) is a * b^(len-1-t) * c^t, so terms ascend and the largest
// term is a * c^(len-1). Construct through make_progression, which
// canonicalizes and rejects anything whose largest term does not fit in 64
// bits.
struct GeomProgression {
  u64 a = 1;
  u64 b = 1;
  u64 c = 2;
  int len = 3;

  u64 term(int t) const;
  u64 min_term() const { return term(0); }
  u64 max_term() const { return term(len - 1); }

  friend bool operator==(const GeomProgression&, const GeomProgression&) = default;
};

GeomProgression make_progression(u64 a, u64 b, u64 c, int len);

std::vector<u64> terms(const GeomProgression& p);

struct MiddlePair {
  u64 lower = 0;
  u64 upper = 0;
};

// The two central terms of an even-length progression,
// a * b^(len/2) * c^(len/2 - 1) < a * b^(len/2 - 1) * c^(len/2).
// Odd lengths have no central pair and raise errc::odd_length.
MiddlePair middle_terms(const GeomProgression& p);

// Threshold length as a function of the largest term. Nondecreasing with
// values >= 3. The normalized() form rounds every value up to an integer,
// then down to an even integer, then clamps below at 6; the process only
// accepts functions whose values are even integers >= 6 ("process ready").
class LengthFunction {
 public:
  enum class Kind { constant, eps_log, table };

  static LengthFunction constant(double value);
  // max(3, eps * ln n)
  static LengthFunction eps_log(double eps);
  // Step function: value of the last entry whose threshold is <= n; entries
  // ascend in threshold and are nondecreasing in value.
  static LengthFunction table(std::vector<std::pair<u64, double>> entries);

  double operator()(u64 n) const;
  bool process_ready() const;
  // Value at n as an even integer; requires process_ready().
  int even_value(u64 n) const;

  LengthFunction normalized() const;

  Kind kind() const { return kind_; }
  bool is_normalized() const { return normalized_; }
  double param() const { return param_; }
  const std::vector<std::pair<u64, double>>& entries() const { return entries_; }
  std::string describe() const;

 private:
  LengthFunction(Kind kind, double param, std::vector<std::pair<u64, double>> entries)
      : kind_(kind), param_(param), entries_(std::move(entries)) {}

  double raw(u64 n) const;

  Kind kind_;
  double param_ = 0;
  std::vector<std::pair<u64, double>> entries_;
  bool normalized_ = false;
};

LengthFunction normalize_length_function(const LengthFunction& k);

// Target gap scale as a function of the window bound. Nondecreasing, strictly
// positive.
class GapFunction {
 public:
  enum class Kind { constant, power, exp_log_ratio, table };

  static GapFunction constant(double value);
  // n^alpha with alpha in (0, 1)
  static GapFunction power(double alpha);
  // exp(c * ln n / ln ln n), clamped below n = 16 to its value at 16 (the
  // expression only increases from there on).
  static GapFunction exp_log_ratio(double c);
  static GapFunction table(std::vector<std::pair<u64, double>> entries);

  double operator()(u64 n) const;

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  const std::vector<std::pair<u64, double>>& entries() const { return entries_; }
  std::string describe() const;

 private:
  GapFunction(Kind kind, double param, std::vector<std::pair<u64, double>> entries)
      : kind_(kind), param_(param), entries_(std::move(entries)) {}

  Kind kind_;
  double param_ = 0;
  std::vector<std::pair<u64, double>> entries_;
};

// Canonical output order: (min term, max term, len, a, b, c) ascending.
bool canonical_less(const GeomProgression& p, const GeomProgression& q);

// Visits every canonical progression with largest term <= n and
// len >= k(largest term), in a fixed loop order (not the canonical order).
// Return false from the visitor to stop early.
void scan_gk(u64 n, const LengthFunction& k,
             const std::function<bool(const GeomProgression&)>& visit);

// The family G_k within [1, n], canonically ordered.
std::vector<GeomProgression> enumerate_gk(u64 n, const LengthFunction& k);

// Progressions of length >= 3 whose term set is a proper subset of p's.
// These are exactly the index sub-progressions: step d and length m give
// ratio (c/b)^d. Canonically ordered.
std::vector<GeomProgression> sub_progressions(const GeomProgression& p);

// True when no sub-progression of p itself qualifies for G_k.
bool is_minimal(const GeomProgression& p, const LengthFunction& k);

// The minimal family G_k* within [1, n], canonically ordered.
std::vector<GeomProgression> enumerate_gk_star(u64 n, const LengthFunction& k);

}  // namespace gpfree
