#pragma once

// Constructive true-pair search. An operator on an odd-dimensional space has
// a real eigenvalue (sign change of its characteristic polynomial). An
// operator on an even-dimensional space is lifted to the commuting pair
// L1(X) = AX + XA^t, L2(X) = AXA^t on symmetric matrices, whose dimension
// n(n+1)/2 carries one factor of two less; a common true-pair of (L1, L2) is
// found by descending into null/range spaces, and a true-pair of A is read off
// from it by splitting a quartic into two real quadratics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "realfactor/config.hpp"
#include "realfactor/errors.hpp"
#include "realfactor/matrix.hpp"
#include "realfactor/polynomial.hpp"

namespace realfactor {

/// (alpha, beta) with beta >= 0, standing for (t - alpha)^2 + beta^2.
struct QuadPair {
  double alpha = 0.0;
  double beta = 0.0;
  friend bool operator==(const QuadPair&, const QuadPair&) = default;
};

/// ((A - alpha I)^2 + beta^2 I) vector ~ 0 with a unit vector.
struct TruePair {
  double alpha = 0.0;
  double beta = 0.0;
  Vector vector;
  double residual = 0.0;
};

struct CommonTruePair {
  QuadPair s_pair;
  QuadPair t_pair;
  Vector vector;
  std::pair<double, double> residuals{0.0, 0.0};
};

/// Exponent of the largest power of two dividing a dimension.
struct Evenness {
  unsigned m = 0;
  friend bool operator==(const Evenness&, const Evenness&) = default;
};

inline Evenness evenness(std::int64_t n) {
  if (n <= 0) throw ContractViolation("evenness: dimension must be positive");
  unsigned m = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++m;
  }
  return {m};
}

enum class TraceKind {
  base_odd,
  lift,
  subspace_null,
  subspace_range,
  total_space,
  case1,
  case1A,
  case1B,
  case2,
  disc_real,
  disc_complex,
};

inline std::string_view to_string(TraceKind k) {
  switch (k) {
    case TraceKind::base_odd: return "base_odd";
    case TraceKind::lift: return "lift";
    case TraceKind::subspace_null: return "subspace_null";
    case TraceKind::subspace_range: return "subspace_range";
    case TraceKind::total_space: return "total_space";
    case TraceKind::case1: return "case1";
    case TraceKind::case1A: return "case1A";
    case TraceKind::case1B: return "case1B";
    case TraceKind::case2: return "case2";
    case TraceKind::disc_real: return "disc_real";
    case TraceKind::disc_complex: return "disc_complex";
  }
  return "unknown";
}

inline std::optional<TraceKind> trace_kind_from_string(std::string_view s) {
  for (int k = 0; k <= static_cast<int>(TraceKind::disc_complex); ++k)
    if (to_string(static_cast<TraceKind>(k)) == s) return static_cast<TraceKind>(k);
  return std::nullopt;
}

struct TraceEvent {
  TraceKind kind;
  std::size_t dim = 0;
  std::vector<std::pair<std::string, double>> detail;

  std::optional<double> get(std::string_view key) const {
    for (const auto& [k, v] : detail)
      if (k == key) return v;
    return std::nullopt;
  }
};

using Trace = std::vector<TraceEvent>;

/// ||((A - alpha I)^2 + beta^2 I) v||_2
inline double true_pair_residual(const Matrix& a, double alpha, double beta,
                                 std::span<const double> v) {
  const Matrix shifted = a.shifted(-alpha);
  const Vector w = shifted * v;
  Vector r = shifted * w;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += beta * beta * v[i];
  return norm2(r);
}

/// Residual bound tol (1 + ||A||_inf)^2 applied to every true-pair.
inline double true_pair_limit(const Matrix& a, double tol) {
  const double s = 1.0 + a.norm_inf();
  return tol * s * s;
}

/// n, n(n+1)/2, ... until the first odd dimension.
inline std::vector<std::size_t> lift_chain(std::size_t n) {
  std::vector<std::size_t> chain{n};
  while (chain.back() % 2 == 0) {
    const std::size_t m = chain.back();
    chain.push_back(m * (m + 1) / 2);
  }
  return chain;
}

/// Refines a true-pair by inverse iteration with the real quadratic
/// (A - alpha I)^2 + beta^2 I (or A - alpha I when beta = 0) followed by a
/// Rayleigh-Ritz update on span{y, A y}. Returns whichever of the input and
/// the iterates has the smallest residual.
inline TruePair polish_true_pair_from(const Matrix& a, const TruePair& tp, int max_steps) {
  const std::size_t n = a.rows();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + a.norm_inf()) * (1.0 + a.norm_inf());
  TruePair best = tp;
  double alpha = tp.alpha, beta = tp.beta;
  Vector v = tp.vector;
  for (int step = 0; step < max_steps && best.residual > floor; ++step) {
    if (beta == 0.0 || n == 1) {
      Vector y = detail::solve_nudged(a.shifted(-alpha), v);
      if (!std::isfinite(norm2(y)) || norm2(y) == 0.0) break;
      v = canonical_unit(std::move(y));
      const Vector av = a * v;
      alpha = dot(v, av);
      beta = 0.0;
    } else {
      const Matrix shifted = a.shifted(-alpha);
      const Matrix q = (shifted * shifted).shifted(beta * beta);
      Vector y = detail::solve_nudged(q, v);
      if (!std::isfinite(norm2(y)) || norm2(y) == 0.0) break;
      y = canonical_unit(std::move(y));
      const auto k = detail::orthonormalize({y, a * y}, 1e-12);
      if (k.size() < 2) {
        v = y;
        alpha = dot(v, a * v);
        beta = 0.0;
      } else {
        const Vector ak0 = a * k[0], ak1 = a * k[1];
        const double h00 = dot(k[0], ak0), h01 = dot(k[0], ak1);
        const double h10 = dot(k[1], ak0), h11 = dot(k[1], ak1);
        const double tr = h00 + h11, det = h00 * h11 - h01 * h10;
        const double disc = tr * tr - 4.0 * det;
        if (disc < 0.0) {
          alpha = 0.5 * tr;
          beta = 0.5 * std::sqrt(-disc);
          v = y;
        } else {
          const double r = std::sqrt(disc);
          const double e1 = 0.5 * (tr - r), e2 = 0.5 * (tr + r);
          const double h = std::abs(e1 - alpha) <= std::abs(e2 - alpha) ? e1 : e2;
          // eigenvector of the 2x2 block for h
          double z0 = h01, z1 = h - h00;
          if (std::abs(z0) + std::abs(z1) < std::abs(h - h11) + std::abs(h10)) {
            z0 = h - h11;
            z1 = h10;
          }
          Vector w(n);
          for (std::size_t i = 0; i < n; ++i) w[i] = z0 * k[0][i] + z1 * k[1][i];
          if (!(norm2(w) > 0.0)) break;
          v = canonical_unit(std::move(w));
          alpha = h;
          beta = 0.0;
        }
      }
    }
    const double res = true_pair_residual(a, alpha, beta, v);
    if (!(res < best.residual)) break;
    best = TruePair{alpha, beta, v, res};
  }
  return best;
}

/// As above; a pair with beta > 0 is also polished as the real pair
/// (alpha, 0), since a nearly real eigenvalue often surfaces with a spurious
/// small beta.
inline TruePair polish_true_pair(const Matrix& a, const TruePair& tp, int max_steps = 4) {
  TruePair best = polish_true_pair_from(a, tp, max_steps);
  if (tp.beta > 0.0) {
    TruePair real{tp.alpha, 0.0, tp.vector, 0.0};
    real.residual = true_pair_residual(a, real.alpha, 0.0, real.vector);
    real = polish_true_pair_from(a, real, max_steps);
    if (real.residual < best.residual) best = std::move(real);
  }
  return best;
}

namespace detail {

inline std::string format_ratio(double residual, double limit) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "residual %.3e vs limit %.3e", residual, limit);
  return buf;
}

class Engine {
 public:
  Engine(const Config& cfg, Trace* trace) : cfg_(cfg), trace_(trace) {}

  TruePair true_pair(const Matrix& a);
  CommonTruePair common(const Matrix& s, const Matrix& t);
  TruePair extract(const Matrix& a, const CommonTruePair& ctp);

 private:
  struct Depth {
    explicit Depth(int& d) : d_(d) { ++d_; }
    ~Depth() { --d_; }
    int& d_;
  };

  void emit(TraceKind kind, std::size_t dim,
            std::vector<std::pair<std::string, double>> detail = {}) {
    if (!trace_) return;
    detail.insert(detail.begin(), {"depth", static_cast<double>(depth_)});
    trace_->push_back({kind, dim, std::move(detail)});
  }

  TruePair solve(const Matrix& a);
  CommonTruePair split(const Matrix& s, const Matrix& t, const TruePair& sp, const Matrix& q,
                       const SubspaceBasis& kernel, double ptol);
  CommonTruePair descend(const Matrix& s, const Matrix& t, const SubspaceBasis& w);

  struct Candidate {
    double alpha;
    double beta;
    Vector vector;
  };
  void candidates_for(const Matrix& a, double c, double d, const Vector& x,
                      std::vector<Candidate>& out) const;

  const Config& cfg_;
  Trace* trace_;
  int depth_ = 0;
  bool swapped_ = false;
};

inline TruePair Engine::true_pair(const Matrix& a) {
  if (!a.square() || a.rows() == 0)
    throw ContractViolation("true_pair: matrix must be square and nonempty");
  if (!a.all_finite()) throw NumericalFailure("true_pair: non-finite entries");
  const std::size_t n = a.rows();
  const auto chain = lift_chain(n);
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i] > cfg_.max_lift_dim) throw LimitExceeded(chain, cfg_.max_lift_dim);

  const double limit = true_pair_limit(a, cfg_.tol);
  const Balanced bal = balance(a);
  const bool scaled = std::any_of(bal.scale.begin(), bal.scale.end(), [](double d) { return d != 1.0; });
  auto attempt = [&](double shift) {
    // a true-pair (alpha, beta, v) of A - sI is (alpha + s, beta, v) for A
    TruePair tp = solve(shift == 0.0 ? bal.matrix : bal.matrix.shifted(-shift));
    tp.alpha += shift;
    if (scaled || shift != 0.0) {
      if (scaled) tp.vector = canonical_unit(bal.unbalance(tp.vector));
      tp.residual = true_pair_residual(a, tp.alpha, tp.beta, tp.vector);
      if (tp.residual > limit) tp = polish_true_pair(a, tp, 8);
    }
    if (tp.residual > limit)
      throw NumericalFailure("true_pair: residual check failed (" + format_ratio(tp.residual, limit) + ")");
    return tp;
  };
  if (depth_ > 0 || n == 1) return attempt(0.0);

  // At the top level a failed search is repeated on shifted copies of A. The
  // shift moves the eigenvalues of the lifted operators relative to each
  // other, which usually separates the clusters that defeated the first try.
  const double unit = 1.0 + bal.matrix.norm_inf();
  std::string failure;
  for (double c : {0.0, 0.3183098861837907, -0.5772156649015329, 0.7071067811865476}) {
    try {
      return attempt(c * unit);
    } catch (const NumericalFailure& e) {
      failure = e.what();
    }
  }
  throw NumericalFailure(failure);
}

inline TruePair Engine::solve(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n % 2 == 1) {
    EigenPair ep = real_eigen_odd(a, cfg_.tol, cfg_.pivot_tol);
    emit(TraceKind::base_odd, n, {{"lambda", ep.lambda}});
    TruePair tp{ep.lambda, 0.0, std::move(ep.vector), 0.0};
    tp.residual = true_pair_residual(a, tp.alpha, 0.0, tp.vector);
    return tp;
  }

  const LiftedPair lifted = lift_operators(a);
  emit(TraceKind::lift, n, {{"to_dim", static_cast<double>(lifted.l1.rows())}});
  CommonTruePair ctp;
  {
    Depth guard(depth_);
    ctp = common(lifted.l1, lifted.l2);
  }
  return extract(a, ctp);
}

inline CommonTruePair Engine::common(const Matrix& s, const Matrix& t) {
  if (!s.square() || !t.square() || s.rows() != t.rows() || s.rows() == 0)
    throw ContractViolation("common_true_pair: operators must be square of equal size");
  const std::size_t n = s.rows();
  if (n == 1) {
    return {{s(0, 0), 0.0}, {t(0, 0), 0.0}, {1.0}, {0.0, 0.0}};
  }

  const TruePair sp = true_pair(s);
  const Matrix shifted = s.shifted(-sp.alpha);
  const Matrix q = (shifted * shifted).shifted(sp.beta * sp.beta);

  // The rank decision on q is checked by what follows it: a wrong numerical
  // null space is not invariant, or the vector found in it fails in the
  // parent. Tighter thresholds are tried first, looser ones when the null
  // space comes out empty. For a real pair, S - alpha I splits the space the
  // same way and is far better conditioned than its square when eigenvalues
  // cluster, so it is the last resort.
  std::vector<const Matrix*> operators{&q};
  if (sp.beta == 0.0) operators.push_back(&shifted);
  std::string failure = "empty numerical null space";
  for (const Matrix* op : operators) {
    for (double scale : {1.0, 1e-2, 1e-4, 1e-6, 10.0, 100.0}) {
      const double ptol = cfg_.pivot_tol * scale;
      const SubspaceBasis kernel = null_basis(*op, ptol);
      if (kernel.empty()) continue;
      try {
        return split(s, t, sp, *op, kernel, ptol);
      } catch (const NumericalFailure& e) {
        failure = e.what();
      }
    }
  }
  // At the first lifted level the roles of the two operators may be swapped:
  // the products spectrum of L2 clusters differently from the sums of L1.
  if (depth_ == 1 && !swapped_) {
    swapped_ = true;
    try {
      CommonTruePair out = common(t, s);
      swapped_ = false;
      std::swap(out.s_pair, out.t_pair);
      std::swap(out.residuals.first, out.residuals.second);
      return out;
    } catch (const NumericalFailure&) {
      swapped_ = false;
    }
  }
  throw NumericalFailure("common_true_pair: " + failure);
}

inline CommonTruePair Engine::split(const Matrix& s, const Matrix& t, const TruePair& sp,
                                    const Matrix& q, const SubspaceBasis& kernel, double ptol) {
  const std::size_t n = s.rows();
  const std::size_t modulus = std::size_t{1} << (evenness(static_cast<std::int64_t>(n)).m + 1);
  if (kernel.dim() == n) {
    emit(TraceKind::total_space, n);
    TruePair tp;
    {
      Depth guard(depth_);
      tp = true_pair(t);
    }
    CommonTruePair out{{sp.alpha, sp.beta}, {tp.alpha, tp.beta}, tp.vector, {0.0, tp.residual}};
    out.residuals.first = true_pair_residual(s, sp.alpha, sp.beta, out.vector);
    if (out.residuals.first > true_pair_limit(s, cfg_.tol))
      throw NumericalFailure("shared vector fails the first operator");
    return out;
  }
  if (kernel.dim() % modulus != 0) {
    emit(TraceKind::subspace_null, kernel.dim(),
         {{"parent_dim", static_cast<double>(n)}, {"alpha", sp.alpha}, {"beta", sp.beta}});
    return descend(s, t, kernel);
  }
  const SubspaceBasis range = range_basis(q, ptol);
  emit(TraceKind::subspace_range, range.dim(),
       {{"parent_dim", static_cast<double>(n)}, {"alpha", sp.alpha}, {"beta", sp.beta}});
  if (range.empty() || range.dim() % modulus == 0)
    throw NumericalFailure("rank-nullity split failed");
  return descend(s, t, range);
}

inline CommonTruePair Engine::descend(const Matrix& s, const Matrix& t,
                                      const SubspaceBasis& w) {
  const Matrix rs = restrict_to(s, w, cfg_.invariance_tol);
  const Matrix rt = restrict_to(t, w, cfg_.invariance_tol);
  CommonTruePair sub;
  {
    Depth guard(depth_);
    sub = common(rs, rt);
  }
  CommonTruePair out{sub.s_pair, sub.t_pair, canonical_unit(w.lift(sub.vector)), {}};
  out.residuals = {true_pair_residual(s, out.s_pair.alpha, out.s_pair.beta, out.vector),
                   true_pair_residual(t, out.t_pair.alpha, out.t_pair.beta, out.vector)};
  if (out.residuals.first > true_pair_limit(s, cfg_.tol) ||
      out.residuals.second > true_pair_limit(t, cfg_.tol))
    throw NumericalFailure("vector mapped back from subspace fails residual check (" +
                           format_ratio(out.residuals.first, true_pair_limit(s, cfg_.tol)) + ", " +
                           format_ratio(out.residuals.second, true_pair_limit(t, cfg_.tol)) +
                           ", dim " + std::to_string(w.dim()) + " of " + std::to_string(s.rows()) + ")");
  return out;
}

inline void Engine::candidates_for(const Matrix& a, double c, double d, const Vector& x,
                                   std::vector<Candidate>& out) const {
  const double disc = c * c - 4.0 * d;
  if (disc < 0.0) {
    out.push_back({0.5 * c, 0.5 * std::sqrt(-disc), x});
    return;
  }
  const double root = std::sqrt(disc);
  const double hi = 0.5 * (c + root);
  const double lo = 0.5 * (c - root);
  const Vector y_lo = a.shifted(-lo) * x;
  const Vector y_hi = a.shifted(-hi) * x;
  const double small = cfg_.tol * (1.0 + a.norm_inf()) * norm2(x);
  auto push_normalized = [&](double lambda, const Vector& v) {
    if (norm2(v) > 0.0) out.push_back({lambda, 0.0, canonical_unit(v)});
  };
  if (norm2(y_lo) <= small) {
    out.push_back({lo, 0.0, x});
    push_normalized(hi, y_lo);
  } else {
    push_normalized(hi, y_lo);
    out.push_back({lo, 0.0, x});
  }
  out.push_back({hi, 0.0, x});
  push_normalized(lo, y_hi);
}

inline TruePair Engine::extract(const Matrix& a, const CommonTruePair& ctp) {
  if (!a.square()) throw ContractViolation("extract_from_common: matrix must be square");
  const std::size_t n = a.rows();
  const SymBasis basis(n);
  if (ctp.vector.size() != basis.dim())
    throw ContractViolation("extract_from_common: vector does not live on the lifted space");
  const Matrix b = basis.unvech(ctp.vector);
  if (b.max_abs() == 0.0) throw ContractViolation("extract_from_common: zero matrix B");

  const double alpha = ctp.s_pair.alpha, beta = ctp.s_pair.beta;
  const double gamma = ctp.t_pair.alpha, delta = ctp.t_pair.beta;
  const Matrix at = a.transpose();
  const Matrix ab = a * b;
  const Matrix l1b = ab + b * at;
  const Matrix l2b = ab * at;
  const Matrix d_mat = delta * (l1b - alpha * b) - beta * (l2b - gamma * b);
  const LiftedPair lifted = lift_operators(a);
  const double tau_case = cfg_.tol * b.max_abs() *
                          (std::abs(delta) * (lifted.l1.norm_inf() + std::abs(alpha)) +
                           std::abs(beta) * (lifted.l2.norm_inf() + std::abs(gamma)) + 1.0);
  const double d_norm = d_mat.max_abs();

  const double anorm = a.norm_inf();
  const Matrix a2 = a * a;
  const double limit = true_pair_limit(a, cfg_.tol);

  std::optional<TruePair> best;
  auto consider = [&](Candidate cand) -> bool {
    TruePair tp{cand.alpha, cand.beta, std::move(cand.vector), 0.0};
    tp.residual = true_pair_residual(a, tp.alpha, tp.beta, tp.vector);
    if (tp.residual <= limit) tp = polish_true_pair(a, tp);
    if (!best || tp.residual < best->residual) best = std::move(tp);
    return best->residual <= limit;
  };

  const bool first_is_case1 = d_norm <= tau_case;
  for (int attempt = 0; attempt < 2; ++attempt) {
    const bool case1 = (attempt == 0) == first_is_case1;
    if (!case1 && d_norm == 0.0) continue;
    const Matrix& bm = case1 ? b : d_mat;
    const double bm_beta = case1 ? beta : -beta;

    // (-t^2 + alpha t - gamma)^2 + (delta - beta t)^2, expanded
    const Polynomial quartic({gamma * gamma + delta * delta,
                              -(2.0 * alpha * gamma + 2.0 * bm_beta * delta),
                              alpha * alpha + 2.0 * gamma + bm_beta * bm_beta, -2.0 * alpha, 1.0});
    QuarticSplit split{};
    try {
      split = quartic_split(quartic);
    } catch (const NumericalFailure&) {
      continue;
    }
    emit(case1 ? TraceKind::case1 : TraceKind::case2, n,
         {{"attempt", static_cast<double>(attempt)},
          {"D_norm", d_norm},
          {"tau_case", tau_case},
          {"q0", quartic[0]},
          {"q1", quartic[1]},
          {"q2", quartic[2]},
          {"q3", quartic[3]},
          {"a", split.a},
          {"b", split.b},
          {"c", split.c},
          {"d", split.d}});

    auto apply_quadratic = [&](double c, double d, const Matrix& m) {
      Matrix out = a2 * m;
      out -= c * (a * m);
      out += d * m;
      return out;
    };
    const Matrix c_mat = apply_quadratic(split.c, split.d, bm);
    const double c_norm = c_mat.max_abs();
    const double tau_c = cfg_.tol * bm.max_abs() *
                         (anorm * anorm + std::abs(split.c) * anorm + std::abs(split.d) + 1.0);

    struct Subcase {
      TraceKind kind;
      double c, d;
      const Matrix* m;
    };
    const Matrix c_alt = apply_quadratic(split.a, split.b, bm);
    std::vector<Subcase> subcases;
    if (c_norm <= tau_c) {
      subcases = {{TraceKind::case1A, split.c, split.d, &bm},
                  {TraceKind::case1B, split.a, split.b, &c_mat},
                  {TraceKind::case1A, split.a, split.b, &bm},
                  {TraceKind::case1B, split.c, split.d, &c_alt}};
    } else {
      subcases = {{TraceKind::case1B, split.a, split.b, &c_mat},
                  {TraceKind::case1A, split.c, split.d, &bm},
                  {TraceKind::case1A, split.a, split.b, &bm},
                  {TraceKind::case1B, split.c, split.d, &c_alt}};
    }

    for (const Subcase& sc : subcases) {
      const Matrix& m = *sc.m;
      if (m.max_abs() == 0.0) continue;
      emit(sc.kind, n,
           {{"attempt", static_cast<double>(attempt)},
            {"C_norm", c_norm},
            {"tau", tau_c},
            {"quad_c", sc.c},
            {"quad_d", sc.d}});
      // columns by decreasing norm; ties keep the lower index
      std::vector<std::pair<double, std::size_t>> cols;
      for (std::size_t j = 0; j < n; ++j) cols.push_back({norm2(m.column(j)), j});
      std::stable_sort(cols.begin(), cols.end(),
                       [](const auto& l, const auto& r) { return l.first > r.first; });
      for (const auto& [cn, j] : cols) {
        if (!(cn > 0.0)) break;
        const Vector x = canonical_unit(m.column(j));
        const double disc = sc.c * sc.c - 4.0 * sc.d;
        std::vector<Candidate> cands;
        candidates_for(a, sc.c, sc.d, x, cands);
        for (Candidate& cand : cands) {
          const Candidate copy = cand;
          const bool ok = consider(std::move(cand));
          if (disc < 0.0)
            emit(TraceKind::disc_complex, n,
                 {{"disc", disc}, {"alpha", copy.alpha}, {"beta", copy.beta},
                  {"column", static_cast<double>(j)}, {"accepted", ok ? 1.0 : 0.0}});
          else
            emit(TraceKind::disc_real, n,
                 {{"disc", disc}, {"lambda", copy.alpha},
                  {"column", static_cast<double>(j)}, {"accepted", ok ? 1.0 : 0.0}});
          if (ok) return *best;
        }
      }
    }
  }
  if (best) {
    TruePair polished = polish_true_pair(a, *best, 8);
    if (polished.residual <= limit) return polished;
    best = std::move(polished);
  }
  throw NumericalFailure("extract_from_common: no case branch produced a residual-passing true-pair"
                         " (" +
                         format_ratio(best ? best->residual : -1.0, limit) + ")");
}

}  // namespace detail

/// A true-pair of the square matrix A.
inline TruePair true_pair(const Matrix& a, const Config& cfg = {}, Trace* trace = nullptr) {
  return detail::Engine(cfg, trace).true_pair(a);
}

/// A common true-pair vector of two commuting operators.
inline CommonTruePair common_true_pair(const Matrix& s, const Matrix& t, const Config& cfg = {},
                                       Trace* trace = nullptr) {
  if (s.square() && t.square() && s.rows() == t.rows()) {
    const double comm = (s * t - t * s).norm_inf();
    if (comm > cfg.invariance_tol * (1.0 + s.norm_inf()) * (1.0 + t.norm_inf()))
      throw ContractViolation("common_true_pair: operators do not commute");
  }
  return detail::Engine(cfg, trace).common(s, t);
}

/// A true-pair of A read off from a common true-pair of its symmetric lift.
inline TruePair extract_from_common(const Matrix& a, const CommonTruePair& ctp,
                                    const Config& cfg = {}, Trace* trace = nullptr) {
  return detail::Engine(cfg, trace).extract(a, ctp);
}

}  // namespace realfactor
