#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "realfactor/errors.hpp"
#include "realfactor/polynomial.hpp"

namespace realfactor {

using Vector = std::vector<double>;

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw ContractViolation("Matrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Columns of the returned matrix are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const double> data() const noexcept { return data_; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Max row sum.
  double norm_inf() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  bool all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(double s) noexcept {
    for (double& x : data_) x *= s;
    return *this;
  }

  /// this + s * I
  Matrix shifted(double s) const {
    if (!square()) throw ContractViolation("shifted: matrix must be square");
    Matrix m(*this);
    for (std::size_t i = 0; i < rows_; ++i) m(i, i) += s;
    return m;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw ContractViolation("Matrix: dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
inline Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
inline Matrix operator*(double s, Matrix a) { return a *= s; }

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ContractViolation("Matrix product: dimension mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw ContractViolation("Matrix-vector: dimension mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

inline double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Scales v to unit Euclidean norm and flips it so that its first
/// non-negligible component is positive.
inline Vector canonical_unit(Vector v) {
  const double n = norm2(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericalFailure("canonical_unit: zero vector");
  for (double& x : v) x /= n;
  for (double x : v) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      break;
    }
  }
  return v;
}

/// Ordered list of orthonormal coordinate vectors spanning a subspace.
struct SubspaceBasis {
  std::size_t ambient_dim = 0;
  std::vector<Vector> vectors;
  double tol_used = 0.0;

  std::size_t dim() const noexcept { return vectors.size(); }
  bool empty() const noexcept { return vectors.empty(); }
  /// ambient_dim x dim matrix with the basis vectors as columns
  Matrix as_matrix() const { return Matrix::from_columns(vectors, ambient_dim); }
  /// Coordinates y in the basis -> ambient vector sum y_i w_i
  Vector lift(std::span<const double> y) const {
    Vector v(ambient_dim, 0.0);
    for (std::size_t k = 0; k < vectors.size(); ++k)
      for (std::size_t i = 0; i < ambient_dim; ++i) v[i] += y[k] * vectors[k][i];
    return v;
  }
};

/// Ordered basis of the n x n symmetric matrices: one element per upper
/// triangle position (i, j), i <= j, in row-major order, equal to E_ii on the
/// diagonal and E_ij + E_ji off it. The coordinate of X at (i, j) is X(i, j).
class SymBasis {
 public:
  explicit SymBasis(std::size_t n) : n_(n) {}

  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return n_ * (n_ + 1) / 2; }

  std::size_t index(std::size_t i, std::size_t j) const noexcept {
    if (i > j) std::swap(i, j);
    // rows 0..i-1 contribute n, n-1, ..., n-i+1 entries
    return i * n_ - i * (i - 1) / 2 + (j - i);
  }

  Vector vech(const Matrix& x) const {
    if (x.rows() != n_ || x.cols() != n_) throw ContractViolation("vech: wrong size");
    Vector v(dim());
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) v[k++] = 0.5 * (x(i, j) + x(j, i));
    return v;
  }

  Matrix unvech(std::span<const double> v) const {
    if (v.size() != dim()) throw ContractViolation("unvech: wrong length");
    Matrix x(n_, n_);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j) {
        x(i, j) = v[k];
        x(j, i) = v[k];
        ++k;
      }
    return x;
  }

 private:
  std::size_t n_;
};

/// Diagonal similarity D^{-1} A D with power-of-two scalings (so the entries
/// are scaled exactly) chosen to equalize off-diagonal row and column norms.
/// An eigenvector v' of the balanced matrix maps back as v = D v'.
struct Balanced {
  Matrix matrix;
  Vector scale;  // diagonal of D

  Vector unbalance(std::span<const double> v) const {
    Vector out(v.begin(), v.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale[i];
    return out;
  }
};

inline Balanced balance(const Matrix& a) {
  if (!a.square()) throw ContractViolation("balance: matrix must be square");
  const std::size_t n = a.rows();
  Balanced out{a, Vector(n, 1.0)};
  Matrix& m = out.matrix;
  constexpr double radix = 2.0;
  bool done = false;
  for (int sweep = 0; sweep < 100 && !done; ++sweep) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      double g = r / radix;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        out.scale[i] *= f;
        for (std::size_t j = 0; j < n; ++j) m(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) m(j, i) *= f;
      }
    }
  }
  return out;
}

/// Companion matrix of a monic polynomial: ones on the subdiagonal, last
/// column (-a_0, ..., -a_{n-1}). det(tI - A) = p(t).
inline Matrix companion(const Polynomial& p) {
  const std::size_t n = p.degree();
  if (n < 1 || p.is_zero()) throw ContractViolation("companion: degree must be >= 1");
  if (!p.is_monic()) throw ContractViolation("companion: polynomial must be monic");
  Matrix a(n, n);
  for (std::size_t i = 1; i < n; ++i) a(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) a(i, n - 1) = -p[i];
  return a;
}

namespace detail {

struct ShiftedLu {
  double det = 0.0;
  int sign = 0;  // sign of det, 0 when a pivot vanished exactly
};

/// LU with partial pivoting of tI - A, accumulating the determinant and its
/// sign separately so the sign survives overflow.
inline ShiftedLu lu_shifted(const Matrix& a, double t) {
  const std::size_t n = a.rows();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? t : 0.0) - a(i, j);
  ShiftedLu out{1.0, 1};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > best) {
        best = std::abs(m(i, k));
        piv = i;
      }
    if (best == 0.0) return {0.0, 0};
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      out.sign = -out.sign;
      out.det = -out.det;
    }
    const double pk = m(k, k);
    out.det *= pk;
    if (pk < 0.0) out.sign = -out.sign;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / pk;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return out;
}

/// Result of Gauss-Jordan elimination with complete pivoting.
struct Elimination {
  Matrix reduced;                   // rows 0..rank-1 hold the pivot rows
  std::vector<std::size_t> pivot_cols;  // pivot column of each reduced row
  double threshold = 0.0;
};

/// Reduced row echelon form with complete pivoting; a candidate pivot is
/// treated as zero when its magnitude is <= tol * max(1, ||A||_inf).
inline Elimination eliminate(const Matrix& a, double tol) {
  Elimination e;
  e.reduced = a;
  e.threshold = tol * std::max(1.0, a.norm_inf());
  Matrix& m = e.reduced;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<bool> used_col(cols, false);
  for (std::size_t r = 0; r < std::min(rows, cols); ++r) {
    std::size_t pi = r, pj = cols;
    double best = 0.0;
    for (std::size_t i = r; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        if (!used_col[j] && std::abs(m(i, j)) > best) {
          best = std::abs(m(i, j));
          pi = i;
          pj = j;
        }
    if (pj == cols || best <= e.threshold) break;
    if (pi != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(pi, j));
    const double piv = m(r, pj);
    for (std::size_t j = 0; j < cols; ++j) m(r, j) /= piv;
    m(r, pj) = 1.0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      const double f = m(i, pj);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) m(i, j) -= f * m(r, j);
      m(i, pj) = 0.0;
    }
    used_col[pj] = true;
    e.pivot_cols.push_back(pj);
  }
  return e;
}

/// Modified Gram-Schmidt with one reorthogonalization pass; vectors whose
/// remaining norm falls below drop_tol times their original norm are dropped.
inline std::vector<Vector> orthonormalize(const std::vector<Vector>& in,
                                          double drop_tol = 1e-10) {
  std::vector<Vector> out;
  for (Vector v : in) {
    const double original = norm2(v);
    if (!(original > 0.0)) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& q : out) {
        const double c = dot(q, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
      }
    const double n = norm2(v);
    if (!(n > drop_tol * original)) continue;
    for (double& x : v) x /= n;
    out.push_back(std::move(v));
  }
  return out;
}

/// Symmetric positive definite solve by Cholesky; returns false if the
/// factorization breaks down.
inline bool cholesky_solve(Matrix g, Matrix& rhs) {
  const std::size_t k = g.rows();
  for (std::size_t j = 0; j < k; ++j) {
    double d = g(j, j);
    for (std::size_t p = 0; p < j; ++p) d -= g(j, p) * g(j, p);
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    g(j, j) = d;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = g(i, j);
      for (std::size_t p = 0; p < j; ++p) s -= g(i, p) * g(j, p);
      g(i, j) = s / d;
    }
  }
  for (std::size_t c = 0; c < rhs.cols(); ++c) {
    for (std::size_t i = 0; i < k; ++i) {
      double s = rhs(i, c);
      for (std::size_t p = 0; p < i; ++p) s -= g(i, p) * rhs(p, c);
      rhs(i, c) = s / g(i, i);
    }
    for (std::size_t i = k; i-- > 0;) {
      double s = rhs(i, c);
      for (std::size_t p = i + 1; p < k; ++p) s -= g(p, i) * rhs(p, c);
      rhs(i, c) = s / g(i, i);
    }
  }
  return true;
}

/// Solve (A) x = b by LU with partial pivoting; singular pivots are nudged to
/// a tiny nonzero value so that inverse iteration can proceed.
inline Vector solve_nudged(Matrix m, Vector b) {
  const std::size_t n = m.rows();
  const double tiny = 1e-20 * std::max(1.0, m.norm_inf());
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      std::swap(b[k], b[piv]);
    }
    if (m(k, k) == 0.0) m(k, k) = tiny;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = m(i, k) / m(k, k);
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
      b[i] -= f * b[k];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= m(i, j) * b[j];
    b[i] = s / m(i, i);
  }
  return b;
}

}  // namespace detail

/// det(tI - A) by LU with partial pivoting.
inline double det_shifted(const Matrix& a, double t) {
  if (!a.square()) throw ContractViolation("det_shifted: matrix must be square");
  return detail::lu_shifted(a, t).det;
}

/// Default pivot tolerance, relative to max(1, ||A||_inf).
inline constexpr double kDefaultPivotTol = 1e-9;

/// Orthonormal basis of the numerical kernel of A.
inline SubspaceBasis null_basis(const Matrix& a, double tol = kDefaultPivotTol) {
  const detail::Elimination e = detail::eliminate(a, tol);
  const std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vector> raw;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector x(cols, 0.0);
    x[f] = 1.0;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) x[e.pivot_cols[r]] = -e.reduced(r, f);
    raw.push_back(std::move(x));
  }
  SubspaceBasis out;
  out.ambient_dim = cols;
  out.tol_used = tol;
  out.vectors = detail::orthonormalize(raw, 0.0);
  return out;
}

/// Orthonormal basis of the column space of A: the pivot columns chosen by
/// the same elimination as null_basis, orthonormalized.
inline SubspaceBasis range_basis(const Matrix& a, double tol = kDefaultPivotTol) {
  const detail::Elimination e = detail::eliminate(a, tol);
  std::vector<std::size_t> cols(e.pivot_cols);
  std::sort(cols.begin(), cols.end());
  std::vector<Vector> raw;
  for (std::size_t c : cols) raw.push_back(a.column(c));
  SubspaceBasis out;
  out.ambient_dim = a.rows();
  out.tol_used = tol;
  out.vectors = detail::orthonormalize(raw, 0.0);
  return out;
}

struct EigenPair {
  double lambda;
  Vector vector;
  double residual;  // ||A v - lambda v||
};

/// A real eigenpair of an odd-dimensional matrix. lambda comes from bisection
/// on the sign of det(tI - A) over [-B, B], B = 1 + ||A||_inf; the vector from
/// the kernel of A - lambda I.
inline EigenPair real_eigen_odd(const Matrix& a, double tol,
                                double pivot_tol = kDefaultPivotTol) {
  if (!a.square()) throw ContractViolation("real_eigen_odd: matrix must be square");
  const std::size_t n = a.rows();
  if (n % 2 == 0) throw ContractViolation("real_eigen_odd: dimension must be odd");
  if (!a.all_finite()) throw NumericalFailure("real_eigen_odd: non-finite entries");
  if (n == 1) return {a(0, 0), {1.0}, 0.0};

  const double anorm = a.norm_inf();
  const double bound = 1.0 + anorm;
  auto sign_of = [&](double t) { return detail::lu_shifted(a, t).sign; };
  const int sign_lo = sign_of(-bound);
  const int sign_hi = sign_of(bound);
  if (sign_lo == 0 || sign_hi == 0 || sign_lo == sign_hi)
    throw NumericalFailure("real_eigen_odd: no sign change of det(tI - A)");
  auto [lo, hi] = detail::bisect(sign_of, -bound, bound, sign_lo, 1e-14 * bound);
  const double lambda = 0.5 * (lo + hi);
  const Matrix shifted = a.shifted(-lambda);
  const double limit = tol * (1.0 + anorm);

  auto residual_of = [&](const Vector& v) { return norm2(shifted * v); };

  double ptol = pivot_tol;
  for (int widen = 0; widen <= 2; ++widen, ptol *= 10.0) {
    SubspaceBasis kernel = null_basis(shifted, ptol);
    if (kernel.empty()) continue;
    Vector v = canonical_unit(kernel.vectors.front());
    const double res = residual_of(v);
    if (res <= limit) return {lambda, std::move(v), res};
  }
  // one step of inverse iteration from a fixed pseudo-random start
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Vector start(n);
  for (double& x : start) x = unif(rng);
  Vector v = canonical_unit(detail::solve_nudged(shifted, start));
  const double res = residual_of(v);
  if (res <= limit) return {lambda, std::move(v), res};
  throw NumericalFailure("real_eigen_odd: eigenvector residual check failed");
}

/// Coordinate matrices of L1(X) = AX + XA^t and L2(X) = AXA^t on symmetric
/// matrices, in SymBasis order.
struct LiftedPair {
  Matrix l1;
  Matrix l2;
};

inline LiftedPair lift_operators(const Matrix& a) {
  if (!a.square()) throw ContractViolation("lift_operators: matrix must be square");
  const std::size_t n = a.rows();
  const SymBasis basis(n);
  const std::size_t m = basis.dim();
  LiftedPair out{Matrix(m, m), Matrix(m, m)};
  // For E = e_i e_j^t + e_j e_i^t (or e_i e_i^t), with a_k the k-th column:
  //   L1(E) = a_i e_j^t + e_j a_i^t + a_j e_i^t + e_i a_j^t
  //   L2(E) = a_i a_j^t + a_j a_i^t
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t col = basis.index(i, j);
      Matrix l1(n, n), l2(n, n);
      auto add_l1 = [&](std::size_t p, std::size_t q) {  // a_p e_q^t + e_q a_p^t
        for (std::size_t r = 0; r < n; ++r) {
          l1(r, q) += a(r, p);
          l1(q, r) += a(r, p);
        }
      };
      auto add_l2 = [&](std::size_t p, std::size_t q) {  // a_p a_q^t
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t s = 0; s < n; ++s) l2(r, s) += a(r, p) * a(s, q);
      };
      add_l1(i, j);
      add_l2(i, j);
      if (i != j) {
        add_l1(j, i);
        add_l2(j, i);
      }
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = r; s < n; ++s) {
          out.l1(basis.index(r, s), col) = l1(r, s);
          out.l2(basis.index(r, s), col) = l2(r, s);
        }
    }
  return out;
}

/// Matrix of A restricted to span(W), in W-coordinates: the least-squares
/// solution R of W R = A W. Throws InvarianceViolation if some column of
/// A W - W R exceeds tol * (1 + ||A||_inf).
inline Matrix restrict_to(const Matrix& a, const SubspaceBasis& w, double tol) {
  if (w.empty()) throw ContractViolation("restrict: empty basis");
  if (!a.square() || a.rows() != w.ambient_dim)
    throw ContractViolation("restrict: dimension mismatch");
  const Matrix wm = w.as_matrix();
  const Matrix wt = wm.transpose();
  const Matrix aw = a * wm;
  Matrix r = wt * aw;
  if (!detail::cholesky_solve(wt * wm, r))
    throw NumericalFailure("restrict: basis is numerically dependent");
  const Matrix resid = aw - wm * r;
  double worst = 0.0;
  for (std::size_t j = 0; j < resid.cols(); ++j) worst = std::max(worst, norm2(resid.column(j)));
  if (worst > tol * (1.0 + a.norm_inf()))
    throw InvarianceViolation("restrict: subspace is not invariant", worst);
  return r;
}

}  // namespace realfactor
