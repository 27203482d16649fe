#pragma once

// Cross-checking tools: a Bairstow factorizer that shares nothing with the
// true-pair pipeline, a generator of polynomials with known factors, and a
// comparison of two factorizations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "realfactor/config.hpp"
#include "realfactor/errors.hpp"
#include "realfactor/factorizer.hpp"
#include "realfactor/polynomial.hpp"

namespace realfactor {

namespace detail {

struct Quadratic {
  double u, v;  // t^2 + u t + v
};

/// Bairstow iteration from (u, v). Converged when the correction stalls at
/// rounding level; the caller judges the result by its remainder.
inline Quadratic bairstow_iterate(const Polynomial& p, Quadratic q, int max_iter = 200) {
  const std::size_t n = p.degree();
  std::vector<double> b(n + 3), c(n + 3);
  for (int it = 0; it < max_iter; ++it) {
    std::fill(b.begin(), b.end(), 0.0);
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t k = n + 1; k-- > 0;) {
      b[k] = p[k] - q.u * b[k + 1] - q.v * b[k + 2];
      c[k] = b[k] - q.u * c[k + 1] - q.v * c[k + 2];
    }
    // Partial derivatives of (b1, b0) with respect to (u, v) are -(c2, c1) and -(c3, c2).
    const double det = c[2] * c[2] - c[1] * c[3];
    if (det == 0.0 || !std::isfinite(det)) break;
    const double du = (b[1] * c[2] - b[0] * c[3]) / det;
    const double dv = (b[0] * c[2] - b[1] * c[1]) / det;
    if (!std::isfinite(du) || !std::isfinite(dv)) break;
    q.u += du;
    q.v += dv;
    if (std::abs(du) + std::abs(dv) <= 1e-15 * (1.0 + std::abs(q.u) + std::abs(q.v))) break;
  }
  return q;
}

inline double newton_root(const Polynomial& p, double x, int steps = 30) {
  const Polynomial dp = p.derivative();
  double fx = p(x);
  for (int i = 0; i < steps && fx != 0.0; ++i) {
    const double d = dp(x);
    if (d == 0.0) break;
    const double next = x - fx / d;
    const double fn = p(next);
    if (!std::isfinite(fn) || std::abs(fn) >= std::abs(fx)) break;
    x = next;
    fx = fn;
  }
  return x;
}

}  // namespace detail

/// Full factorization by odd-degree root peeling and Bairstow quadratic
/// extraction with seeded random restarts.
inline Factorization bairstow_factor(const Polynomial& p, const Config& cfg = {}) {
  if (p.is_zero() || p.degree() < 1) throw ContractViolation("bairstow_factor: degree must be at least 1");
  Factorization f;
  f.constant = p.leading();
  const Polynomial monic = p.monic();
  std::mt19937_64 rng(cfg.seed);

  auto add_quadratic = [&](const Polynomial& quad) {
    const QuadOutcome qo = solve_quadratic(quad);
    if (const auto* rr = std::get_if<RealRootPair>(&qo)) {
      f.linear_roots.push_back(rr->r1);
      f.linear_roots.push_back(rr->r2);
    } else {
      const auto& cp = std::get<ConjugatePair>(qo);
      if (cp.beta <= cfg.tau_split) {
        f.linear_roots.push_back(cp.alpha);
        f.linear_roots.push_back(cp.alpha);
      } else {
        f.quad_pairs.push_back({cp.alpha, cp.beta});
      }
    }
  };

  Polynomial q = monic;
  while (q.degree() >= 3) {
    const std::size_t n = q.degree();
    if (n % 2 == 1) {
      const double root = detail::newton_root(q, odd_real_root(q));
      f.linear_roots.push_back(root);
      q = deflate_linear(q, root).monic();
      continue;
    }
    const double bound = cauchy_bound(q);
    const double accept = 1e-10 * q.norm_inf();
    detail::Quadratic best{q[n - 1], q[n - 2]};
    double best_rem = -1.0;
    std::uniform_real_distribution<double> coef(-bound, bound);
    for (int attempt = 0; attempt <= cfg.max_restarts; ++attempt) {
      detail::Quadratic start{q[n - 1], q[n - 2]};
      if (attempt > 0) start = {coef(rng), std::abs(coef(rng))};
      const detail::Quadratic found = detail::bairstow_iterate(q, start);
      if (!std::isfinite(found.u) || !std::isfinite(found.v)) continue;
      const double rem = divmod(q, Polynomial({found.v, found.u, 1.0})).remainder.norm_inf();
      if (best_rem < 0.0 || rem < best_rem) {
        best = found;
        best_rem = rem;
      }
      if (rem <= accept) break;
    }
    if (best_rem < 0.0 || best_rem > accept)
      throw NumericalFailure("bairstow_factor: no convergence after " +
                             std::to_string(cfg.max_restarts) + " restarts");
    const Polynomial quad({best.v, best.u, 1.0});
    add_quadratic(quad);
    q = divmod(q, quad).quotient.monic();
  }
  if (q.degree() == 2)
    add_quadratic(q);
  else if (q.degree() == 1)
    f.linear_roots.push_back(-q[0] / q[1]);

  for (double& r : f.linear_roots) {
    const double polished = detail::newton_root(monic, r, 5);
    if (std::abs(polished - r) <= 1e-6 * (1.0 + std::abs(r))) r = polished;
  }
  canonicalize(f);
  f.residual = relative_residual(f, p);
  return f;
}

struct InstanceSpec {
  std::size_t m = 0;  // linear factors
  std::size_t k = 0;  // quadratic factors
  std::pair<double, double> root_range{-2.0, 2.0};
  std::pair<double, double> beta_range{0.2, 2.0};
  double min_separation = 0.1;
  std::uint64_t seed = 0;
};

struct Instance {
  Polynomial p;
  Factorization truth;
};

/// Monic polynomial with m real roots and k conjugate pairs drawn uniformly,
/// every two zeros (conjugates included) at least min_separation apart in
/// the complex plane.
inline Instance random_poly(const InstanceSpec& spec) {
  if (spec.m + 2 * spec.k < 1) throw ContractViolation("random_poly: degree must be at least 1");
  if (!(spec.root_range.first <= spec.root_range.second) ||
      !(0.0 < spec.beta_range.first && spec.beta_range.first <= spec.beta_range.second))
    throw ContractViolation("random_poly: empty range");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> root_dist(spec.root_range.first, spec.root_range.second);
  std::uniform_real_distribution<double> beta_dist(spec.beta_range.first, spec.beta_range.second);

  struct Zero {
    double re, im;
  };
  std::vector<Zero> zeros;
  auto fits = [&](Zero z) {
    for (const Zero& w : zeros)
      if (std::hypot(z.re - w.re, z.im - w.im) < spec.min_separation) return false;
    return true;
  };
  constexpr int max_attempts = 10000;
  int attempts = 0;
  auto draw = [&](auto&& make, auto&& ok) {
    while (true) {
      if (++attempts > max_attempts)
        throw ContractViolation("random_poly: rejection sampling exceeded 10000 attempts");
      const auto cand = make();
      if (ok(cand)) return cand;
    }
  };

  Factorization truth;
  for (std::size_t i = 0; i < spec.m; ++i) {
    const double r = draw([&] { return root_dist(rng); }, [&](double x) { return fits({x, 0.0}); });
    zeros.push_back({r, 0.0});
    truth.linear_roots.push_back(r);
  }
  for (std::size_t i = 0; i < spec.k; ++i) {
    const QuadPair q = draw(
        [&] {
          const double a = root_dist(rng);
          return QuadPair{a, beta_dist(rng)};
        },
        [&](QuadPair c) {
          return 2.0 * c.beta >= spec.min_separation && fits({c.alpha, c.beta}) &&
                 fits({c.alpha, -c.beta});
        });
    zeros.push_back({q.alpha, q.beta});
    zeros.push_back({q.alpha, -q.beta});
    truth.quad_pairs.push_back(q);
  }
  canonicalize(truth);
  Instance out{reconstruct(truth), truth};
  out.truth.residual = 0.0;
  return out;
}

struct CompareReport {
  bool equal = false;
  double max_distance = 0.0;
  std::vector<double> unmatched_roots_first, unmatched_roots_second;
  std::vector<QuadPair> unmatched_pairs_first, unmatched_pairs_second;
};

/// Sort-then-zip matching of two factorizations. Roots match by absolute
/// difference, pairs by Euclidean distance in (alpha, beta).
inline CompareReport compare(Factorization f1, Factorization f2, double tol) {
  canonicalize(f1);
  canonicalize(f2);
  CompareReport rep;
  const std::size_t nr = std::min(f1.linear_roots.size(), f2.linear_roots.size());
  for (std::size_t i = 0; i < nr; ++i) {
    const double d = std::abs(f1.linear_roots[i] - f2.linear_roots[i]);
    rep.max_distance = std::max(rep.max_distance, d);
    if (!(d <= tol)) {
      rep.unmatched_roots_first.push_back(f1.linear_roots[i]);
      rep.unmatched_roots_second.push_back(f2.linear_roots[i]);
    }
  }
  for (std::size_t i = nr; i < f1.linear_roots.size(); ++i) rep.unmatched_roots_first.push_back(f1.linear_roots[i]);
  for (std::size_t i = nr; i < f2.linear_roots.size(); ++i) rep.unmatched_roots_second.push_back(f2.linear_roots[i]);

  const std::size_t nq = std::min(f1.quad_pairs.size(), f2.quad_pairs.size());
  for (std::size_t i = 0; i < nq; ++i) {
    const QuadPair& a = f1.quad_pairs[i];
    const QuadPair& b = f2.quad_pairs[i];
    const double d = std::hypot(a.alpha - b.alpha, a.beta - b.beta);
    rep.max_distance = std::max(rep.max_distance, d);
    if (!(d <= tol)) {
      rep.unmatched_pairs_first.push_back(a);
      rep.unmatched_pairs_second.push_back(b);
    }
  }
  for (std::size_t i = nq; i < f1.quad_pairs.size(); ++i) rep.unmatched_pairs_first.push_back(f1.quad_pairs[i]);
  for (std::size_t i = nq; i < f2.quad_pairs.size(); ++i) rep.unmatched_pairs_second.push_back(f2.quad_pairs[i]);

  rep.equal = rep.unmatched_roots_first.empty() && rep.unmatched_roots_second.empty() &&
              rep.unmatched_pairs_first.empty() && rep.unmatched_pairs_second.empty();
  return rep;
}

}  // namespace realfactor
