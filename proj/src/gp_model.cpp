#include "gpfree/gp_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gpfree {

using arith::checked_mul;
using arith::checked_pow;
using arith::pow_if_fits;

u64 GeomProgression::term(int t) const {
  u64 v = checked_mul(a, checked_pow(b, len - 1 - t));
  return checked_mul(v, checked_pow(c, t));
}

GeomProgression make_progression(u64 a, u64 b, u64 c, int len) {
  if (a < 1 || b < 1 || c < 1) fail(errc::invalid_argument, "progression parts must be positive");
  if (len < 3) fail(errc::invalid_argument, "progression length below 3");
  u64 g = std::gcd(b, c);
  b /= g;
  c /= g;
  if (b == c) fail(errc::ratio_trivial, "ratio 1 is not a progression");
  if (b > c) std::swap(b, c);
  GeomProgression p{a, b, c, len};
  (void)p.max_term();  // throws errc::overflow when the largest term does not fit
  return p;
}

std::vector<u64> terms(const GeomProgression& p) {
  std::vector<u64> out;
  out.reserve(p.len);
  u64 cur = checked_mul(p.a, checked_pow(p.b, p.len - 1));
  out.push_back(cur);
  for (int t = 1; t < p.len; ++t) {
    cur = checked_mul(cur / p.b, p.c);  // exact: b still divides cur here
    out.push_back(cur);
  }
  return out;
}

MiddlePair middle_terms(const GeomProgression& p) {
  if (p.len % 2 != 0) fail(errc::odd_length, "no central pair in odd length");
  return {p.term(p.len / 2 - 1), p.term(p.len / 2)};
}

// ---- LengthFunction ----------------------------------------------------

LengthFunction LengthFunction::constant(double value) {
  if (!(value >= 3.0)) fail(errc::invalid_argument, "length constant below 3");
  return LengthFunction(Kind::constant, value, {});
}

LengthFunction LengthFunction::eps_log(double eps) {
  if (!(eps > 0.0)) fail(errc::invalid_argument, "eps must be positive");
  return LengthFunction(Kind::eps_log, eps, {});
}

LengthFunction LengthFunction::table(std::vector<std::pair<u64, double>> entries) {
  if (entries.empty()) fail(errc::invalid_argument, "empty length table");
  if (entries.front().first != 1)
    fail(errc::invalid_argument, "length table must start at n = 1");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].second >= 3.0)) fail(errc::invalid_argument, "length table value below 3");
    if (i > 0) {
      if (entries[i].first <= entries[i - 1].first)
        fail(errc::not_ascending, "length table thresholds");
      if (entries[i].second < entries[i - 1].second)
        fail(errc::not_ascending, "length table values must be nondecreasing");
    }
  }
  return LengthFunction(Kind::table, 0, std::move(entries));
}

double LengthFunction::raw(u64 n) const {
  switch (kind_) {
    case Kind::constant:
      return param_;
    case Kind::eps_log:
      return std::max(3.0, param_ * std::log(static_cast<double>(n)));
    case Kind::table: {
      double v = entries_.front().second;
      for (const auto& [lo, val] : entries_) {
        if (lo <= n) v = val;
        else break;
      }
      return v;
    }
  }
  return 3.0;
}

double LengthFunction::operator()(u64 n) const {
  double v = raw(n);
  if (!normalized_) return v;
  double up = std::ceil(v);
  double even = 2.0 * std::floor(up / 2.0);
  return std::max(even, 6.0);
}

bool LengthFunction::process_ready() const {
  if (normalized_) return true;
  auto ready = [](double v) {
    return v >= 6.0 && v == std::floor(v) && std::fmod(v, 2.0) == 0.0;
  };
  switch (kind_) {
    case Kind::constant:
      return ready(param_);
    case Kind::eps_log:
      return false;
    case Kind::table:
      return std::all_of(entries_.begin(), entries_.end(),
                         [&](const auto& e) { return ready(e.second); });
  }
  return false;
}

int LengthFunction::even_value(u64 n) const {
  if (!process_ready()) fail(errc::not_process_ready, "length function is not process ready");
  return static_cast<int>(std::llround((*this)(n)));
}

LengthFunction LengthFunction::normalized() const {
  LengthFunction k = *this;
  k.normalized_ = true;
  return k;
}

std::string LengthFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant:
      os << "const:" << param_;
      break;
    case Kind::eps_log:
      os << "epslog:" << param_;
      break;
    case Kind::table:
      os << "table[" << entries_.size() << "]";
      break;
  }
  if (normalized_) os << ":normalized";
  return os.str();
}

LengthFunction normalize_length_function(const LengthFunction& k) { return k.normalized(); }

// ---- GapFunction ---------------------------------------------------------

GapFunction GapFunction::constant(double value) {
  if (!(value > 0.0)) fail(errc::invalid_argument, "gap constant must be positive");
  return GapFunction(Kind::constant, value, {});
}

GapFunction GapFunction::power(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) fail(errc::invalid_argument, "gap exponent outside (0,1)");
  return GapFunction(Kind::power, alpha, {});
}

GapFunction GapFunction::exp_log_ratio(double c) {
  if (!(c > 0.0)) fail(errc::invalid_argument, "gap scale must be positive");
  return GapFunction(Kind::exp_log_ratio, c, {});
}

GapFunction GapFunction::table(std::vector<std::pair<u64, double>> entries) {
  if (entries.empty()) fail(errc::invalid_argument, "empty gap table");
  if (entries.front().first != 1)
    fail(errc::invalid_argument, "gap table must start at n = 1");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].second > 0.0)) fail(errc::invalid_argument, "gap table value must be positive");
    if (i > 0) {
      if (entries[i].first <= entries[i - 1].first)
        fail(errc::not_ascending, "gap table thresholds");
      if (entries[i].second < entries[i - 1].second)
        fail(errc::not_ascending, "gap table values must be nondecreasing");
    }
  }
  return GapFunction(Kind::table, 0, std::move(entries));
}

double GapFunction::operator()(u64 n) const {
  switch (kind_) {
    case Kind::constant:
      return param_;
    case Kind::power:
      return std::pow(static_cast<double>(n), param_);
    case Kind::exp_log_ratio: {
      double x = static_cast<double>(std::max<u64>(n, 16));
      return std::exp(param_ * std::log(x) / std::log(std::log(x)));
    }
    case Kind::table: {
      double v = entries_.front().second;
      for (const auto& [lo, val] : entries_) {
        if (lo <= n) v = val;
        else break;
      }
      return v;
    }
  }
  return 1.0;
}

std::string GapFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::constant:
      os << "const:" << param_;
      break;
    case Kind::power:
      os << "power:" << param_;
      break;
    case Kind::exp_log_ratio:
      os << "explog:" << param_;
      break;
    case Kind::table:
      os << "table[" << entries_.size() << "]";
      break;
  }
  return os.str();
}

// ---- enumeration -----------------------------------------------------

bool canonical_less(const GeomProgression& p, const GeomProgression& q) {
  auto key = [](const GeomProgression& g) {
    return std::tuple(g.min_term(), g.max_term(), g.len, g.a, g.b, g.c);
  };
  return key(p) < key(q);
}

void scan_gk(u64 n, const LengthFunction& k,
             const std::function<bool(const GeomProgression&)>& visit) {
  for (u64 c = 2; c <= n / c; ++c) {
    for (u64 b = 1; b < c; ++b) {
      if (std::gcd(b, c) != 1) continue;
      for (int len = 3;; ++len) {
        auto cp = pow_if_fits(c, len - 1);
        if (!cp || *cp > n) break;
        u64 max_a = n / *cp;
        for (u64 a = 1; a <= max_a; ++a) {
          u64 top = a * *cp;
          // k is nondecreasing and top grows with a, so the first miss ends
          // the a loop for this (b, c, len).
          if (static_cast<double>(len) < k(top)) break;
          if (!visit(GeomProgression{a, b, c, len})) return;
        }
      }
    }
  }
}

std::vector<GeomProgression> enumerate_gk(u64 n, const LengthFunction& k) {
  std::vector<GeomProgression> out;
  scan_gk(n, k, [&](const GeomProgression& p) {
    out.push_back(p);
    return true;
  });
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<GeomProgression> sub_progressions(const GeomProgression& p) {
  std::vector<GeomProgression> out;
  const int top = p.len - 1;
  for (int d = 1; d <= top / 2; ++d) {
    for (int m = 3; (m - 1) * d <= top; ++m) {
      for (int s = 0; s + (m - 1) * d <= top; ++s) {
        if (d == 1 && m == p.len) continue;  // p itself
        u64 aq = checked_mul(checked_mul(p.a, checked_pow(p.b, top - s - d * (m - 1))),
                             checked_pow(p.c, s));
        out.push_back(GeomProgression{aq, checked_pow(p.b, d), checked_pow(p.c, d), m});
      }
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool is_minimal(const GeomProgression& p, const LengthFunction& k) {
  const int top = p.len - 1;
  for (int d = 1; d <= top / 2; ++d) {
    for (int m = 3; (m - 1) * d <= top; ++m) {
      for (int s = 0; s + (m - 1) * d <= top; ++s) {
        if (d == 1 && m == p.len) continue;
        u64 sub_top = p.term(s + (m - 1) * d);
        if (static_cast<double>(m) >= k(sub_top)) return false;
      }
    }
  }
  return true;
}

std::vector<GeomProgression> enumerate_gk_star(u64 n, const LengthFunction& k) {
  std::vector<GeomProgression> out = enumerate_gk(n, k);
  std::erase_if(out, [&](const GeomProgression& p) { return !is_minimal(p, k); });
  return out;
}

}  // namespace gpfree
