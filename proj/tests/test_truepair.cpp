#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "realfactor/truepair.hpp"
#include "support.hpp"

using namespace realfactor;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void expect_valid(const Matrix& a, const TruePair& tp, double tol = 1e-8) {
  EXPECT_GE(tp.beta, 0.0);
  EXPECT_NEAR(norm2(tp.vector), 1.0, 1e-12);
  const double res = true_pair_residual(a, tp.alpha, tp.beta, tp.vector);
  EXPECT_LE(res, true_pair_limit(a, tol));
  EXPECT_DOUBLE_EQ(res, tp.residual);
  for (double x : tp.vector) {
    if (std::abs(x) > 1e-12) {
      EXPECT_GT(x, 0.0) << "canonical sign";
      break;
    }
  }
}

/// Every lift maps n to n(n+1)/2 and every subspace step goes strictly down.
void expect_trace_shape(const Trace& trace) {
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TraceEvent& e = trace[i];
    if (e.kind == TraceKind::lift) {
      const double n = static_cast<double>(e.dim);
      EXPECT_EQ(e.get("to_dim").value(), n * (n + 1) / 2);
    }
    if (e.kind == TraceKind::subspace_null || e.kind == TraceKind::subspace_range)
      EXPECT_LT(static_cast<double>(e.dim), e.get("parent_dim").value());
  }
}

}  // namespace

TEST(Evenness, Examples) {
  EXPECT_EQ(evenness(3).m, 0u);
  EXPECT_EQ(evenness(12).m, 2u);
  EXPECT_EQ(evenness(8).m, 3u);
  EXPECT_THROW(evenness(0), ContractViolation);
  EXPECT_THROW(evenness(-4), ContractViolation);
}

TEST(LiftChain, DegreeEight) {
  EXPECT_EQ(lift_chain(8), (std::vector<std::size_t>{8, 36, 666, 222111}));
  EXPECT_EQ(lift_chain(4), (std::vector<std::size_t>{4, 10, 55}));
  EXPECT_EQ(lift_chain(7), (std::vector<std::size_t>{7}));
}

TEST(TruePair, RotationIsExact) {
  const Matrix a{{0, -1}, {1, 0}};
  const TruePair tp = true_pair(a);
  EXPECT_EQ(tp.alpha, 0.0);
  EXPECT_EQ(tp.beta, 1.0);
  EXPECT_EQ(tp.residual, 0.0);
  expect_valid(a, tp);
}

TEST(TruePair, Scalar) {
  const TruePair tp = true_pair(Matrix{{2}});
  EXPECT_EQ(tp.alpha, 2.0);
  EXPECT_EQ(tp.beta, 0.0);
  EXPECT_EQ(tp.vector, (Vector{1.0}));
}

TEST(TruePair, CompanionOfProductOfQuadratics) {
  const Matrix a = companion(Polynomial({4, 0, 5, 0, 1}));
  const TruePair tp = true_pair(a);
  expect_valid(a, tp);
  EXPECT_NEAR(tp.alpha, 0.0, 1e-8);
  EXPECT_TRUE(std::abs(tp.beta - 1.0) < 1e-8 || std::abs(tp.beta - 2.0) < 1e-8) << tp.beta;
}

TEST(TruePair, DiagonalRecoversAnEntry) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + i % 7;
    std::vector<double> d(n);
    for (double& x : d) x = u(rng);
    const Matrix a = Matrix::diagonal(d);
    const TruePair tp = true_pair(a);
    expect_valid(a, tp);
    EXPECT_LE(tp.beta, std::sqrt(1e-8));
    double gap = 1e300;
    for (double x : d) gap = std::min(gap, std::abs(x - tp.alpha));
    EXPECT_LE(gap, std::sqrt(1e-8));
  }
}

TEST(TruePair, StructuredMatrices) {
  const double d6[] = {3, -1, 2, 5, 0.5, -2};
  Matrix jordan(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    jordan(i, i) = 2.0;
    if (i < 3) jordan(i, i + 1) = 1.0;
  }
  Matrix blocks(4, 4);
  blocks(0, 1) = -1;
  blocks(1, 0) = 1;
  blocks(2, 3) = -2;
  blocks(3, 2) = 2;
  const std::vector<Matrix> cases{
      Matrix(4, 4),
      Matrix::identity(6),
      Matrix::diagonal(d6),
      jordan,
      blocks,
      companion(Polynomial({24, -50, 35, -10, 1})),                                    // roots 1..4
      companion(mul(mul(Polynomial({-10, 1}), Polynomial({20, 1})), Polynomial({900, 0, 1}))),
      companion(Polynomial({1, 0, 0, 0, 1})),
      companion(Polynomial({1, 0, 0, 0, 0, 0, 1})),
      companion(Polynomial({1, -4, 6, -4, 1})),  // (t-1)^4
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    SCOPED_TRACE(i);
    expect_valid(cases[i], true_pair(cases[i]));
  }
}

TEST(TruePair, SoundOnRandomMatrices) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 300; ++i) {
    const Matrix a = testing_support::random_matrix(1 + i % 6, rng);
    Trace trace;
    const TruePair tp = true_pair(a, {}, &trace);
    expect_valid(a, tp);
    expect_trace_shape(trace);
  }
}

TEST(TruePair, DegreeEightExceedsLiftCap) {
  const Matrix a = companion(Polynomial({1, 0, 0, 0, 0, 0, 0, 0, 1}));
  try {
    true_pair(a);
    FAIL() << "expected LimitExceeded";
  } catch (const LimitExceeded& e) {
    EXPECT_EQ(e.chain(), (std::vector<std::size_t>{8, 36, 666, 222111}));
    EXPECT_EQ(e.limit(), 300u);
    EXPECT_NE(std::string(e.what()).find("8 \xE2\x86\x92 36 \xE2\x86\x92 666 \xE2\x86\x92 222111"), std::string::npos);
  }
}

TEST(TruePair, LiftCapIsConfigurable) {
  Config cfg;
  cfg.max_lift_dim = 9;
  EXPECT_THROW(true_pair(companion(Polynomial({4, 0, 5, 0, 1})), cfg), LimitExceeded);
}

TEST(TruePair, RejectsBadInput) {
  EXPECT_THROW(true_pair(Matrix(2, 3)), ContractViolation);
  EXPECT_THROW(true_pair(Matrix{{std::nan(""), 0}, {0, 1}}), NumericalFailure);
}

TEST(CommonTruePair, RotationLift) {
  const LiftedPair l = lift_operators(Matrix{{0, -1}, {1, 0}});
  const CommonTruePair c = common_true_pair(l.l1, l.l2);
  EXPECT_EQ(c.s_pair, (QuadPair{0, 0}));
  EXPECT_EQ(c.t_pair, (QuadPair{1, 0}));
  ASSERT_EQ(c.vector.size(), 3u);
  EXPECT_NEAR(c.vector[0], kInvSqrt2, 1e-15);
  EXPECT_NEAR(c.vector[1], 0.0, 1e-15);
  EXPECT_NEAR(c.vector[2], kInvSqrt2, 1e-15);
}

TEST(CommonTruePair, Scalars) {
  const CommonTruePair c = common_true_pair(Matrix{{2}}, Matrix{{3}});
  EXPECT_EQ(c.s_pair, (QuadPair{2, 0}));
  EXPECT_EQ(c.t_pair, (QuadPair{3, 0}));
  EXPECT_EQ(c.vector, (Vector{1.0}));
}

TEST(CommonTruePair, IdenticalOperators) {
  const Matrix s{{0, -1}, {1, 0}};
  const CommonTruePair c = common_true_pair(s, s);
  EXPECT_EQ(c.s_pair, (QuadPair{0, 1}));
  EXPECT_EQ(c.t_pair, (QuadPair{0, 1}));
}

TEST(CommonTruePair, SharedVectorOnRandomLifts) {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 100; ++i) {
    const Matrix a = testing_support::random_matrix(2 + 2 * (i % 2), rng);
    const LiftedPair l = lift_operators(a);
    const CommonTruePair c = common_true_pair(l.l1, l.l2);
    // the same vector for both operators, each within its own bound
    EXPECT_LE(true_pair_residual(l.l1, c.s_pair.alpha, c.s_pair.beta, c.vector), true_pair_limit(l.l1, 1e-8));
    EXPECT_LE(true_pair_residual(l.l2, c.t_pair.alpha, c.t_pair.beta, c.vector), true_pair_limit(l.l2, 1e-8));
  }
}

TEST(CommonTruePair, RejectsNonCommutingOperators) {
  EXPECT_THROW(common_true_pair(Matrix{{1, 1}, {0, 1}}, Matrix{{1, 0}, {1, 1}}), ContractViolation);
  EXPECT_THROW(common_true_pair(Matrix::identity(2), Matrix::identity(3)), ContractViolation);
}

TEST(ExtractFromCommon, RotationTrace) {
  const Matrix a{{0, -1}, {1, 0}};
  const CommonTruePair ctp{{0, 0}, {1, 0}, {kInvSqrt2, 0, kInvSqrt2}, {0, 0}};
  Trace trace;
  const TruePair tp = extract_from_common(a, ctp, {}, &trace);
  ASSERT_GE(trace.size(), 3u);
  EXPECT_EQ(trace[0].kind, TraceKind::case1);
  EXPECT_EQ(trace[0].get("D_norm").value(), 0.0);
  EXPECT_EQ(trace[1].kind, TraceKind::case1A);
  EXPECT_EQ(trace[2].kind, TraceKind::disc_complex);
  EXPECT_EQ(trace[2].get("disc").value(), -4.0);
  EXPECT_EQ(tp.alpha, 0.0);
  EXPECT_EQ(tp.beta, 1.0);
  ASSERT_EQ(tp.vector.size(), 2u);
  EXPECT_NEAR(tp.vector[0], 1.0, 1e-15);
  EXPECT_EQ(tp.vector[1], 0.0);
}

TEST(ExtractFromCommon, RejectsForeignVector) {
  const CommonTruePair ctp{{0, 0}, {1, 0}, {1, 0}, {0, 0}};
  EXPECT_THROW(extract_from_common(Matrix::identity(2), ctp), ContractViolation);
}

TEST(PolishTruePair, NeverWorse) {
  std::mt19937_64 rng(34);
  for (int i = 0; i < 100; ++i) {
    const Matrix a = testing_support::random_matrix(3, rng);
    TruePair tp = true_pair(a);
    tp.alpha += 1e-5;
    tp.residual = true_pair_residual(a, tp.alpha, tp.beta, tp.vector);
    const TruePair p = polish_true_pair(a, tp);
    EXPECT_LE(p.residual, tp.residual);
    EXPECT_DOUBLE_EQ(p.residual, true_pair_residual(a, p.alpha, p.beta, p.vector));
  }
}

TEST(TraceKind, NamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(TraceKind::disc_complex); ++k) {
    const auto kind = static_cast<TraceKind>(k);
    EXPECT_EQ(trace_kind_from_string(to_string(kind)), kind);
  }
  EXPECT_FALSE(trace_kind_from_string("nope").has_value());
}
