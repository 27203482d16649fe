#pragma once

#include <cstddef>
#include <cstdint>

namespace realfactor {

/// Numerical knobs shared by the true-pair engine, the factorizer and the
/// Bairstow oracle.
struct Config {
  /// True-pair residual tolerance: ||((A - a I)^2 + b^2 I) v|| <= tol (1 + ||A||)^2.
  double tol = 1e-8;
  /// Pivot threshold for rank decisions, relative to max(1, ||M||_inf).
  double pivot_tol = 1e-9;
  /// Accepted departure from exact invariance when restricting to a subspace,
  /// and from exact commutation of operator pairs.
  double invariance_tol = 1e-6;
  /// Largest lifted dimension the recursion may construct.
  std::size_t max_lift_dim = 300;
  /// Record TraceEvents (callers pass a Trace sink when set).
  bool trace = false;

  /// Relative remainder threshold deciding that r(t) divides p(t).
  double tau_rem = 1e-8;
  /// Quadratic factors with beta at or below this are treated as a double real root.
  double tau_split = 1e-7;
  /// Root acceptance: |p(lambda)| <= tau_root * sum |a_i| |lambda|^i.
  double tau_root = 1e-8;

  /// Bairstow oracle restarts and seed.
  int max_restarts = 60;
  std::uint64_t seed = 0x0bad5eed;
};

}  // namespace realfactor
