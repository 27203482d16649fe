#pragma once

// Real factorization by peeling. A true-pair (alpha, beta) of the companion
// matrix of p gives r(t) = (t - alpha)^2 + beta^2; either r divides p, or the
// remainder a t - b of p by r has b / a as a real root of p.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "realfactor/config.hpp"
#include "realfactor/errors.hpp"
#include "realfactor/matrix.hpp"
#include "realfactor/polynomial.hpp"
#include "realfactor/truepair.hpp"

namespace realfactor {

/// constant * prod (t - root) * prod ((t - alpha)^2 + beta^2)
struct Factorization {
  double constant = 1.0;
  std::vector<double> linear_roots;
  std::vector<QuadPair> quad_pairs;
  double residual = 0.0;

  std::size_t degree() const { return linear_roots.size() + 2 * quad_pairs.size(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

struct LinearFactor {
  double root;
};
struct QuadraticFactor {
  double alpha;
  double beta;
};
using PeeledFactor = std::variant<LinearFactor, QuadraticFactor>;

enum class PeelPath { remainder_zero, eigen_remainder };

inline std::string_view to_string(PeelPath p) {
  return p == PeelPath::remainder_zero ? "remainder_zero" : "eigen_remainder";
}

struct PeelResult {
  PeeledFactor factor;
  Polynomial quotient;
  PeelPath path = PeelPath::remainder_zero;
  QuadPair pair;          // the true-pair used
  Polynomial remainder;   // p mod (t - alpha)^2 + beta^2, written a t - b
  double a = 0.0;
  double b = 0.0;
};

inline Polynomial reconstruct(const Factorization& f) {
  Polynomial out = Polynomial::constant(f.constant);
  for (double r : f.linear_roots) out = mul(out, Polynomial::linear(r));
  for (const QuadPair& q : f.quad_pairs) out = mul(out, Polynomial::shifted_square(q.alpha, q.beta));
  return out;
}

/// ||reconstruct(f) - p||_inf / ||p||_inf
inline double relative_residual(const Factorization& f, const Polynomial& p) {
  const double scale = p.norm_inf();
  const double diff = (reconstruct(f) - p).norm_inf();
  return scale > 0.0 ? diff / scale : diff;
}

/// Linear roots ascending, quadratic pairs ascending by (alpha, beta).
inline void canonicalize(Factorization& f) {
  auto clean = [](double x) { return x == 0.0 ? 0.0 : x; };  // drops -0
  for (double& r : f.linear_roots) r = clean(r);
  for (QuadPair& q : f.quad_pairs) {
    q.alpha = clean(q.alpha);
    q.beta = clean(q.beta);
  }
  std::sort(f.linear_roots.begin(), f.linear_roots.end());
  std::sort(f.quad_pairs.begin(), f.quad_pairs.end(), [](const QuadPair& l, const QuadPair& r) {
    return l.alpha != r.alpha ? l.alpha < r.alpha : l.beta < r.beta;
  });
}

namespace detail {

/// One Bairstow correction of t^2 + u t + v as a divisor of p (deg p >= 2).
/// Returns false when the Jacobian is singular.
inline bool bairstow_step(const Polynomial& p, double& u, double& v) {
  const std::size_t n = p.degree();
  // t^2 - r t - s
  const double r = -u, s = -v;
  std::vector<double> b(n + 3, 0.0), c(n + 3, 0.0);
  for (std::size_t k = n + 1; k-- > 0;) {
    b[k] = p[k] + r * b[k + 1] + s * b[k + 2];
    c[k] = b[k] + r * c[k + 1] + s * c[k + 2];
  }
  const double det = c[2] * c[2] - c[1] * c[3];
  if (det == 0.0 || !std::isfinite(det)) return false;
  const double dr = (-b[1] * c[2] + b[0] * c[3]) / det;
  const double ds = (-b[0] * c[2] + b[1] * c[1]) / det;
  if (!std::isfinite(dr) || !std::isfinite(ds)) return false;
  u = -(r + dr);
  v = -(s + ds);
  return true;
}

inline double remainder_norm(const Polynomial& p, double u, double v) {
  return divmod(p, Polynomial({v, u, 1.0})).remainder.norm_inf();
}

/// Bairstow polish of (t - alpha)^2 + beta^2 against p, keeping a negative
/// discriminant and never increasing the remainder.
inline QuadPair polish_quadratic(const Polynomial& p, QuadPair q, int steps = 20) {
  double u = -2.0 * q.alpha, v = q.alpha * q.alpha + q.beta * q.beta;
  double best = remainder_norm(p, u, v);
  for (int i = 0; i < steps && best > 0.0; ++i) {
    double nu = u, nv = v;
    if (!bairstow_step(p, nu, nv)) break;
    if (!(nu * nu - 4.0 * nv < 0.0)) break;
    const double rn = remainder_norm(p, nu, nv);
    if (!(rn < best)) break;
    u = nu;
    v = nv;
    best = rn;
  }
  const double alpha = -0.5 * u;
  return {alpha, std::sqrt(std::max(0.0, v - alpha * alpha))};
}

inline double polish_root(const Polynomial& p, double x, int steps = 8) {
  const double w = 1e-2 * (1.0 + std::abs(x));
  return guarded_newton(p, x, x - w, x + w, steps);
}

}  // namespace detail

/// Peels one factor of p using the given true-pair of its companion matrix.
inline PeelResult peel_with_pair(const Polynomial& p, QuadPair pair, const Config& cfg = {}) {
  if (p.degree() < 3) throw ContractViolation("peel: degree must be at least 3");
  if (!p.is_monic()) throw ContractViolation("peel: polynomial must be monic");
  const Polynomial r = Polynomial::shifted_square(pair.alpha, pair.beta);
  DivMod dm = divmod(p, r);
  PeelResult out{QuadraticFactor{pair.alpha, pair.beta}, dm.quotient, PeelPath::remainder_zero,
                 pair, dm.remainder, dm.remainder[1], -dm.remainder[0]};
  const double pnorm = p.norm_inf();
  if (dm.remainder.norm_inf() <= cfg.tau_rem * pnorm) {
    QuadPair q = pair;
    if (pair.beta > cfg.tau_split) q = detail::polish_quadratic(p, pair);
    out.factor = QuadraticFactor{q.alpha, q.beta};
    out.quotient = divmod(p, Polynomial::shifted_square(q.alpha, q.beta)).quotient;
    return out;
  }
  if (std::abs(out.a) <= cfg.tau_rem * pnorm)
    throw NumericalFailure("peel: remainder is a nonzero constant");
  double lambda = out.b / out.a;
  lambda = detail::polish_root(p, lambda);
  if (!(std::abs(p(lambda)) <= cfg.tau_root * p.eval_scale(lambda)))
    throw NumericalFailure("peel: b/a = " + std::to_string(lambda) + " is not a root");
  out.factor = LinearFactor{lambda};
  out.quotient = deflate_linear(p, lambda);
  out.path = PeelPath::eigen_remainder;
  return out;
}

/// Peels one factor of p using a true-pair of companion(p).
inline PeelResult peel(const Polynomial& p, const Config& cfg = {}, Trace* trace = nullptr) {
  if (p.degree() < 3) throw ContractViolation("peel: degree must be at least 3");
  if (!p.is_monic()) throw ContractViolation("peel: polynomial must be monic");
  const TruePair tp = true_pair(companion(p), cfg, trace);
  return peel_with_pair(p, {tp.alpha, tp.beta}, cfg);
}

/// Full factorization by repeated peeling.
inline Factorization factor(const Polynomial& p, const Config& cfg = {}, Trace* trace = nullptr,
                            std::vector<PeelPath>* paths = nullptr) {
  if (p.is_zero()) throw ContractViolation("factor: zero polynomial");
  if (p.degree() < 1) throw ContractViolation("factor: degree must be at least 1");
  Factorization f;
  f.constant = p.leading();
  auto add_pair = [&](double alpha, double beta) {
    if (beta <= cfg.tau_split) {
      f.linear_roots.push_back(alpha);
      f.linear_roots.push_back(alpha);
    } else {
      f.quad_pairs.push_back({alpha, beta});
    }
  };

  Polynomial q = p.monic();
  while (q.degree() >= 3) {
    PeelResult pr = peel(q, cfg, trace);
    if (paths) paths->push_back(pr.path);
    if (const auto* lin = std::get_if<LinearFactor>(&pr.factor))
      f.linear_roots.push_back(lin->root);
    else {
      const auto& quad = std::get<QuadraticFactor>(pr.factor);
      add_pair(quad.alpha, quad.beta);
    }
    q = pr.quotient.monic();
  }
  if (q.degree() == 2) {
    const QuadOutcome qo = solve_quadratic(q);
    if (const auto* rr = std::get_if<RealRootPair>(&qo)) {
      f.linear_roots.push_back(rr->r1);
      f.linear_roots.push_back(rr->r2);
    } else {
      const auto& cp = std::get<ConjugatePair>(qo);
      add_pair(cp.alpha, cp.beta);
    }
  } else if (q.degree() == 1) {
    f.linear_roots.push_back(-q[0] / q[1]);
  }
  canonicalize(f);
  f.residual = relative_residual(f, p);
  return f;
}

/// Polishes every factor against the full polynomial: Newton for linear
/// roots, Bairstow for quadratic pairs. Each change is kept only if the
/// reconstruction residual does not grow.
inline Factorization refine(const Factorization& f, const Polynomial& p, const Config& cfg = {}) {
  (void)cfg;
  if (p.is_zero() || p.degree() < 1 || f.degree() != p.degree()) return f;
  const Polynomial monic = p.monic();
  Factorization best = f;
  best.residual = relative_residual(best, p);
  for (std::size_t i = 0; i < best.linear_roots.size(); ++i) {
    Factorization trial = best;
    trial.linear_roots[i] = detail::polish_root(monic, trial.linear_roots[i], 20);
    trial.residual = relative_residual(trial, p);
    if (trial.residual <= best.residual) best = trial;
  }
  for (std::size_t i = 0; i < best.quad_pairs.size(); ++i) {
    Factorization trial = best;
    trial.quad_pairs[i] = detail::polish_quadratic(monic, trial.quad_pairs[i], 40);
    trial.residual = relative_residual(trial, p);
    if (trial.residual <= best.residual) best = trial;
  }
  Factorization out = best;
  canonicalize(out);
  out.residual = relative_residual(out, p);
  return out;
}

struct VerifyReport {
  double max_abs_diff = 0.0;
  double relative_residual = 0.0;
  std::size_t factor_degree = 0;  // m + 2k
  std::size_t poly_degree = 0;
  bool degree_ok = false;

  bool passed(double tol) const { return degree_ok && relative_residual <= tol; }
};

inline VerifyReport verify(const Factorization& f, const Polynomial& p) {
  VerifyReport rep;
  const Polynomial diff = reconstruct(f) - p;
  rep.max_abs_diff = diff.norm_inf();
  const double scale = p.norm_inf();
  rep.relative_residual = scale > 0.0 ? rep.max_abs_diff / scale : rep.max_abs_diff;
  rep.factor_degree = f.degree();
  rep.poly_degree = p.degree();
  rep.degree_ok = rep.factor_degree == rep.poly_degree;
  return rep;
}

}  // namespace realfactor
