#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace realfactor {

/// Thrown when an operation is called outside its precondition (wrong degree,
/// non-square matrix, non-monic companion input, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A thresholded numerical decision failed to produce a result that passes
/// its residual check.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A subspace was not invariant under the operator being restricted to it.
class InvarianceViolation : public NumericalFailure {
 public:
  InvarianceViolation(const std::string& what, double worst_residual)
      : NumericalFailure(what), worst_residual_(worst_residual) {}

  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

/// The symmetric-lift recursion would exceed the configured dimension cap.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(std::vector<std::size_t> chain, std::size_t limit)
      : std::runtime_error(describe(chain, limit)),
        chain_(std::move(chain)),
        limit_(limit) {}

  const std::vector<std::size_t>& chain() const noexcept { return chain_; }
  std::size_t limit() const noexcept { return limit_; }

  static std::string format_chain(const std::vector<std::size_t>& chain) {
    std::string s;
    for (std::size_t i = 0; i < chain.size(); ++i) {
      if (i) s += " \xE2\x86\x92 ";  // U+2192
      s += std::to_string(chain[i]);
    }
    return s;
  }

 private:
  static std::string describe(const std::vector<std::size_t>& chain,
                              std::size_t limit) {
    return "lift dimension chain " + format_chain(chain) +
           " exceeds max lift dimension " + std::to_string(limit);
  }

  std::vector<std::size_t> chain_;
  std::size_t limit_;
};

/// Polynomial text could not be parsed. position is a 0-based byte offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : std::invalid_argument(msg + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace realfactor
