#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "realfactor/matrix.hpp"
#include "realfactor/polynomial.hpp"

namespace testing_support {

using realfactor::Matrix;
using realfactor::Polynomial;

inline Matrix random_matrix(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

inline Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

inline Polynomial random_poly(std::size_t degree, std::mt19937_64& rng, bool monic = false) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(degree + 1);
  for (double& x : c) x = u(rng);
  if (monic) c.back() = 1.0;
  else if (std::abs(c.back()) < 0.1) c.back() = c.back() < 0 ? -0.5 : 0.5;
  return Polynomial(std::move(c));
}

/// sum a_i t^i with std::pow, no Horner
inline double eval_naive(const Polynomial& p, double t) {
  double s = 0.0;
  for (std::size_t i = 0; i <= p.degree(); ++i) s += p[i] * std::pow(t, static_cast<double>(i));
  return s;
}

/// Laplace expansion along the first row.
inline double det_cofactor(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c == j) continue;
        minor(r - 1, cc++) = a(r, c);
      }
    s += ((j % 2) ? -1.0 : 1.0) * a(0, j) * det_cofactor(minor);
  }
  return s;
}

/// Real root of a continuous f on [lo, hi] with a sign change, by plain bisection.
template <class F>
double bisection_oracle(F f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

/// Orthogonal matrix from classical Gram-Schmidt on a random matrix.
inline Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  Matrix m = random_matrix(n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i) c += m(i, k) * m(i, j);
        for (std::size_t i = 0; i < n; ++i) m(i, j) -= c * m(i, k);
      }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += m(i, j) * m(i, j);
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) m(i, j) /= nrm;
  }
  return m;
}

/// S with a prescribed leading eigenvalue (or conjugate pair), T a polynomial
/// in S, and P = p(S) for the minimal real polynomial p of that leading block.
struct CommutingInstance {
  Matrix s, t, p;
  std::size_t kernel_dim;
};

inline CommutingInstance commuting_instance(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix j(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) j(r, c) = u(rng);
  const double a = u(rng), b = 0.5 + 0.5 * std::abs(u(rng));
  const bool pair = n >= 2 && u(rng) < 0.0;
  const std::size_t lead = pair ? 2 : 1;
  if (pair) {
    j(0, 0) = j(1, 1) = a;
    j(0, 1) = -b;
    j(1, 0) = b;
  } else {
    j(0, 0) = a;
  }
  for (std::size_t r = lead; r < n; ++r) j(r, r) = a + 1.0 + static_cast<double>(r);
  const Matrix v = random_orthogonal(n, rng);
  const Matrix s = v * j * v.transpose();
  const Matrix t = (s * s - 0.7 * s).shifted(0.3);
  Matrix p = s.shifted(-a);
  if (pair) p = (p * p).shifted(b * b);
  return {s, t, p, lead};
}

/// max |T w - W (W^t T w)| over the columns w of an orthonormal W
inline double invariance_residual(const Matrix& t, const std::vector<std::vector<double>>& w) {
  const std::size_t n = t.rows();
  double worst = 0.0;
  for (const auto& col : w) {
    const std::vector<double> tw = t * col;
    std::vector<double> r = tw;
    for (const auto& q : w) {
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) c += q[i] * tw[i];
      for (std::size_t i = 0; i < n; ++i) r[i] -= c * q[i];
    }
    for (double x : r) worst = std::max(worst, std::abs(x));
  }
  return worst;
}

inline std::vector<double> coeffs(const Polynomial& p) { return p.coeff_vector(); }

}  // namespace testing_support
