#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "realfactor/errors.hpp"

namespace realfactor {

/// Dense real polynomial, coefficients in ascending order (coeffs()[i]
/// multiplies t^i). Exact trailing zeros are trimmed on construction; the
/// zero polynomial is stored as {0}.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  Polynomial(std::initializer_list<double> c) : coeffs_(c) { trim(); }
  explicit Polynomial(std::vector<double> c) : coeffs_(std::move(c)) { trim(); }

  static Polynomial constant(double c) { return Polynomial({c}); }
  static Polynomial monomial(std::size_t power, double c = 1.0) {
    std::vector<double> v(power + 1, 0.0);
    v[power] = c;
    return Polynomial(std::move(v));
  }
  /// (t - root)
  static Polynomial linear(double root) { return Polynomial({-root, 1.0}); }
  /// (t - alpha)^2 + beta^2
  static Polynomial shifted_square(double alpha, double beta) {
    return Polynomial({alpha * alpha + beta * beta, -2.0 * alpha, 1.0});
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const noexcept { return coeffs_.back(); }
  double operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0.0;
  }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  const std::vector<double>& coeff_vector() const noexcept { return coeffs_; }

  /// max |coeff|
  double norm_inf() const noexcept {
    double m = 0.0;
    for (double c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  bool is_monic() const noexcept { return coeffs_.back() == 1.0; }

  Polynomial monic() const {
    if (is_zero()) throw ContractViolation("monic: zero polynomial");
    std::vector<double> v(coeffs_);
    const double lc = v.back();
    for (double& c : v) c /= lc;
    v.back() = 1.0;
    return Polynomial(std::move(v));
  }

  Polynomial derivative() const {
    if (coeffs_.size() == 1) return Polynomial();
    std::vector<double> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      v[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial(std::move(v));
  }

  /// Horner evaluation.
  double operator()(double t) const noexcept {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// sum |a_i| |t|^i, the magnitude against which rounding in p(t) is measured
  double eval_scale(double t) const noexcept {
    double acc = 0.0;
    const double at = std::abs(t);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * at + std::abs(*it);
    return acc;
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(0.0);
  }

  std::vector<double> coeffs_;
};

inline double eval(const Polynomial& p, double t) { return p(t); }

inline Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  std::vector<double> v(std::max(p.degree(), q.degree()) + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = p[i] + q[i];
  return Polynomial(std::move(v));
}

inline Polynomial operator-(const Polynomial& p, const Polynomial& q) {
  std::vector<double> v(std::max(p.degree(), q.degree()) + 1, 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = p[i] - q[i];
  return Polynomial(std::move(v));
}

inline Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> v(p.coeff_vector());
  for (double& c : v) c *= s;
  return Polynomial(std::move(v));
}

/// Coefficient convolution.
inline Polynomial mul(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return Polynomial();
  std::vector<double> v(p.degree() + q.degree() + 1, 0.0);
  for (std::size_t i = 0; i <= p.degree(); ++i)
    for (std::size_t j = 0; j <= q.degree(); ++j) v[i + j] += p[i] * q[j];
  return Polynomial(std::move(v));
}

inline Polynomial operator*(const Polynomial& p, const Polynomial& q) { return mul(p, q); }

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

/// Long division p = quotient * d + remainder with deg remainder < deg d.
inline DivMod divmod(const Polynomial& p, const Polynomial& d) {
  if (d.is_zero()) throw ContractViolation("divmod: division by zero polynomial");
  const std::size_t n = p.degree();
  const std::size_t m = d.degree();
  if (p.is_zero() || n < m) return {Polynomial(), p};

  std::vector<double> rem(p.coeff_vector());
  std::vector<double> quo(n - m + 1, 0.0);
  const double lead = d.leading();
  for (std::size_t k = n - m + 1; k-- > 0;) {
    const double c = rem[k + m] / lead;
    quo[k] = c;
    for (std::size_t j = 0; j <= m; ++j) rem[k + j] -= c * d[j];
    rem[k + m] = 0.0;
  }
  rem.resize(m == 0 ? 1 : m);
  return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

/// Synthetic division by (t - root); the remainder p(root) is discarded.
inline Polynomial deflate_linear(const Polynomial& p, double root) {
  if (p.degree() == 0) throw ContractViolation("deflate_linear: constant polynomial");
  const std::size_t n = p.degree();
  std::vector<double> q(n, 0.0);
  double carry = p[n];
  for (std::size_t k = n; k-- > 0;) {
    q[k] = carry;
    carry = p[k] + carry * root;
  }
  return Polynomial(std::move(q));
}

namespace detail {

/// Bisection on a bracketing interval [lo, hi] with f(lo) <= 0 <= f(hi)
/// (sign_lo = sign of f at lo, which must be nonzero and opposite to f(hi)).
/// Stops at width <= width_tol, an exact zero, or max_iter halvings.
/// Returns the final bracket.
template <class SignFn>
std::pair<double, double> bisect(SignFn&& sign_of, double lo, double hi, int sign_lo,
                                 double width_tol, int max_iter = 200) {
  for (int it = 0; it < max_iter && hi - lo > width_tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int s = sign_of(mid);
    if (s == 0) return {mid, mid};
    if (s == sign_lo)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

inline int sign(double x) noexcept { return (x > 0.0) - (x < 0.0); }

/// Newton steps on p starting at x, each accepted only if it stays inside
/// [lo, hi] and does not increase |p|.
inline double guarded_newton(const Polynomial& p, double x, double lo, double hi,
                             int steps) {
  const Polynomial dp = p.derivative();
  double fx = p(x);
  for (int i = 0; i < steps && fx != 0.0; ++i) {
    const double d = dp(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next >= lo && next <= hi)) break;
    const double fn = p(next);
    if (!(std::abs(fn) <= std::abs(fx))) break;
    if (next == x) break;
    x = next;
    fx = fn;
  }
  return x;
}

}  // namespace detail

/// Cauchy-type bound 1 + max_{i<n} |a_i / a_n|: every real root lies in [-B, B].
inline double cauchy_bound(const Polynomial& p) {
  const std::size_t n = p.degree();
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(p[i] / p[n]));
  return 1.0 + m;
}

/// A real zero of an odd-degree polynomial. Bisection between -B and B (the
/// signs of p there differ because the degree is odd), then at most five
/// guarded Newton steps.
inline double odd_real_root(const Polynomial& p) {
  const std::size_t n = p.degree();
  if (n % 2 == 0) throw ContractViolation("odd_real_root: degree must be odd");
  const double bound = cauchy_bound(p);
  const int sign_lo = -detail::sign(p.leading());
  auto sign_of = [&](double t) { return detail::sign(p(t)); };
  auto [lo, hi] = detail::bisect(sign_of, -bound, bound, sign_lo,
                                 1e-14 * std::max(1.0, bound));
  if (lo == hi) return lo;
  double x = 0.5 * (lo + hi);
  if (std::abs(p(lo)) < std::abs(p(x))) x = lo;
  if (std::abs(p(hi)) < std::abs(p(x))) x = hi;
  return detail::guarded_newton(p, x, lo - (hi - lo), hi + (hi - lo), 5);
}

/// Two real roots r1 <= r2.
struct RealRootPair {
  double r1;
  double r2;
};

/// (t - alpha)^2 + beta^2 with beta > 0.
struct ConjugatePair {
  double alpha;
  double beta;
};

using QuadOutcome = std::variant<RealRootPair, ConjugatePair>;

inline QuadOutcome solve_quadratic(const Polynomial& p) {
  if (p.degree() != 2) throw ContractViolation("solve_quadratic: degree must be 2");
  const double c0 = p[0], c1 = p[1], c2 = p[2];
  const double disc = c1 * c1 - 4.0 * c2 * c0;
  if (disc >= 0.0) {
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    if (q == 0.0) return RealRootPair{0.0, 0.0};
    double r1 = q / c2;
    double r2 = c0 / q;
    if (r1 > r2) std::swap(r1, r2);
    return RealRootPair{r1, r2};
  }
  const double alpha = -c1 / (2.0 * c2);
  const double beta = std::abs(std::sqrt(4.0 * c2 * c0 - c1 * c1) / (2.0 * c2));
  return ConjugatePair{alpha, beta};
}

/// Coefficients of (t^2 - a t + b)(t^2 - c t + d).
struct QuarticSplit {
  double a, b, c, d;

  Polynomial first() const { return Polynomial({b, -a, 1.0}); }
  Polynomial second() const { return Polynomial({d, -c, 1.0}); }
  Polynomial expand() const { return mul(first(), second()); }
};

namespace detail {

/// Largest real root of z^3 + e2 z^2 + e1 z + e0 with e0 <= 0, which is
/// therefore nonnegative.
inline double largest_nonnegative_cubic_root(double e2, double e1, double e0) {
  const Polynomial f({e0, e1, e2, 1.0});
  if (e0 == 0.0) {
    // z = 0 is a root; the others solve z^2 + e2 z + e1.
    const double disc = e2 * e2 - 4.0 * e1;
    if (disc >= 0.0) return std::max(0.0, 0.5 * (-e2 + std::sqrt(disc)));
    return 0.0;
  }
  double lo = 0.0;
  const double crit_disc = 4.0 * e2 * e2 - 12.0 * e1;  // of 3z^2 + 2 e2 z + e1
  if (crit_disc >= 0.0) {
    const double crit_hi = (-2.0 * e2 + std::sqrt(crit_disc)) / 6.0;
    if (crit_hi > 0.0 && f(crit_hi) <= 0.0) lo = crit_hi;
  }
  const double hi = std::max(lo, 0.0) + cauchy_bound(f);
  if (!(f(lo) <= 0.0) || !(f(hi) > 0.0))
    throw NumericalFailure("quartic_split: resolvent cubic bracket failure");
  if (f(lo) == 0.0) return lo;
  auto sign_of = [&](double z) { return sign(f(z)); };
  auto [a, b] = bisect(sign_of, lo, hi, -1, 1e-15 * std::max(1.0, hi));
  const double z = 0.5 * (a + b);
  return guarded_newton(f, z, a, b, 8);
}

}  // namespace detail

/// Split a monic quartic into two real quadratics with Descartes' method:
/// depress, solve the resolvent cubic for a nonnegative root z, factor the
/// depressed quartic as (s^2 + u s + v)(s^2 - u s + w) with u = sqrt(z), and
/// undo the shift.
inline QuarticSplit quartic_split(const Polynomial& p) {
  if (p.degree() != 4) throw ContractViolation("quartic_split: degree must be 4");
  if (!p.is_monic()) throw ContractViolation("quartic_split: polynomial must be monic");
  const double b3 = p[3], b2 = p[2], b1 = p[1], b0 = p[0];
  const double h = b3 / 4.0;  // s = t + h
  const double P = b2 - 3.0 * b3 * b3 / 8.0;
  const double Q = b1 - b3 * b2 / 2.0 + b3 * b3 * b3 / 8.0;
  const double R = b0 - b3 * b1 / 4.0 + b3 * b3 * b2 / 16.0 -
                   3.0 * b3 * b3 * b3 * b3 / 256.0;
  const double scale = std::max(1.0, p.norm_inf());

  double u = 0.0, v = 0.0, w = 0.0;
  if (std::abs(Q) <= 1e-12 * scale) {
    const double disc = P * P - 4.0 * R;
    if (disc >= 0.0) {
      // (s^2 + y1)(s^2 + y2) with y1 + y2 = P, y1 y2 = R
      const double sq = std::sqrt(disc);
      v = 0.5 * (P - sq);
      w = 0.5 * (P + sq);
    } else {
      // R > 0 here: (s^2 + sqrt R)^2 - (2 sqrt R - P) s^2
      const double root_r = std::sqrt(R);
      u = std::sqrt(std::max(0.0, 2.0 * root_r - P));
      v = root_r;
      w = root_r;
    }
  } else {
    const double z = detail::largest_nonnegative_cubic_root(2.0 * P, P * P - 4.0 * R,
                                                            -Q * Q);
    if (!(z > 0.0)) throw NumericalFailure("quartic_split: degenerate resolvent root");
    u = std::sqrt(z);
    v = 0.5 * (P + z - Q / u);
    w = 0.5 * (P + z + Q / u);
  }
  // s^2 + u s + v with s = t + h  ->  t^2 + (2h + u) t + (h^2 + u h + v)
  QuarticSplit out{};
  out.a = -(2.0 * h + u);
  out.b = h * h + u * h + v;
  out.c = -(2.0 * h - u);
  out.d = h * h - u * h + w;
  return out;
}

}  // namespace realfactor
