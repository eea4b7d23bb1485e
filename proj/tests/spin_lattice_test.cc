#include <gtest/gtest.h>

#include "oracles.h"
#include "spinlattice/random.h"
#include "spinlattice/spin_lattice.h"

namespace sl = spinlattice;
using sl::Complex;
using sl::ComplexMatrix;
using sl::kI;

TEST(Advance, MatchesClosedFormLambda) {
  sl::RandomSource rng(31);
  const auto t = rng.fg_triple(4, 2);
  ComplexMatrix l = t.lambda0();
  sl::HermitianMatrix s = t.sigma0();
  for (int n = 1; n <= 8; ++n) {
    const auto step = sl::advance(l, s, t.alpha());
    l = step.lambda;
    s = step.sigma;
    EXPECT_LT(oracle::max_abs(l - sl::lambda_closed_form(n, t)) / oracle::max_abs(l), 1e-12);
  }
}

TEST(Example, SigmaAndSpinsMatchClosedForm) {
  const oracle::Example ex;
  const auto st = sl::LatticeState::generate(ex.triple(), 30);
  for (int n = 0; n <= 30; ++n) {
    EXPECT_NEAR(st.sigmas()[n].matrix()(0, 0).real() / ex.sigma(n), 1.0, 1e-12) << n;
  }
  for (int n = 0; n < 30; ++n) {
    const ComplexMatrix& s = st.spin(n).matrix();
    EXPECT_NEAR(s(0, 0).real(), ex.s11(n), 1e-12) << n;
    EXPECT_NEAR(s(1, 1).real(), -ex.s11(n), 1e-12) << n;
    EXPECT_NEAR(std::abs(s(0, 1) - ex.s12(n, 0.0)), 0.0, 1e-12) << n;
  }
  EXPECT_NEAR(st.sigmas()[1].matrix()(0, 0).real(), 1.25, 1e-14);
  EXPECT_NEAR(st.sigmas()[2].matrix()(0, 0).real(), 164.0 / 64.0, 1e-13);
}

TEST(Example, OtherHeights) {
  for (double h : {1.5, 3.0, 5.0}) {
    oracle::Example ex;
    ex.h = h;
    ex.theta1 = std::sqrt(0.7 * h) * std::exp(Complex(0.0, 0.4));
    ex.theta2 = std::sqrt(1.3 * h);
    const auto st = sl::LatticeState::generate(ex.triple(), 15);
    for (int n = 0; n < 15; ++n) {
      const ComplexMatrix& s = st.spin(n).matrix();
      EXPECT_NEAR(s(0, 0).real(), ex.s11(n), 1e-12);
      EXPECT_NEAR(std::abs(s(0, 1) - ex.s12(n, 0.0)), 0.0, 1e-12);
    }
  }
}

TEST(Example, OverflowGuard) {
  try {
    sl::LatticeState::generate(oracle::Example{}.triple(), 60);
    FAIL();
  } catch (const sl::Error& e) {
    EXPECT_EQ(e.code(), sl::ErrorCode::kOverflow);
  }
}

TEST(Spins, MatchNaiveRecursion) {
  sl::RandomSource rng(32);
  for (int k = 0; k < 10; ++k) {
    const auto t = rng.fg_triple(1 + k % 5, 1 + k % 3);
    const auto st = sl::LatticeState::generate(t, 8);
    const auto naive = oracle::naive_spins(t, 8);
    for (int n = 0; n < 8; ++n) {
      EXPECT_LT(oracle::max_abs(st.spin(n).matrix() - naive[n]), 1e-9) << k << " " << n;
    }
  }
}

TEST(Spins, InvolutionAndHermitian) {
  sl::RandomSource rng(33);
  for (int k = 0; k < 10; ++k) {
    const auto t = rng.fg_triple(1 + k % 6, 1 + k % 3);
    const auto st = sl::LatticeState::generate(t, 30);
    ASSERT_EQ(static_cast<int>(st.spins().size()), 30);
    for (int n = 0; n < 30; ++n) {
      EXPECT_LE(st.involution_residual(n), st.involution_bound(n, 1e-9));
      EXPECT_LE(st.spin_asymmetry()[n], 1e-10);
    }
  }
}

TEST(Sigma, MatchesQuadrature) {
  sl::RandomSource rng(34);
  const auto t = rng.fg_triple(3, 1);
  const auto st = sl::LatticeState::generate(t, 3);
  for (int n = 0; n <= 3; ++n) {
    const ComplexMatrix q = oracle::sigma_by_quadrature(t.alpha(), st.lambdas()[n], 20000);
    const ComplexMatrix& s = st.sigmas()[n].matrix();
    EXPECT_LT(oracle::max_abs(q - s) / oracle::max_abs(s), 1e-6) << n;
  }
}

TEST(Sigma, IdentityPropagatesAndPositive) {
  sl::RandomSource rng(35);
  for (int k = 0; k < 10; ++k) {
    const auto t = rng.fg_triple(2 + k % 4, 1 + k % 2);
    const auto st = sl::LatticeState::generate(t, 30);
    for (int n = 0; n <= 30; ++n) {
      EXPECT_LE(st.identity_residual(n) / st.identity_scale(n), 1e-9);
      EXPECT_TRUE(st.sigmas()[n].is_positive_definite());
    }
  }
}

TEST(KIdentity, Holds) {
  sl::RandomSource rng(36);
  for (int k = 0; k < 10; ++k) {
    const auto t = rng.fg_triple(1 + k % 5, 1 + k % 2);
    const auto st = sl::LatticeState::generate(t, 20);
    for (int n = 0; n < 19; ++n) EXPECT_LE(st.k_residual(n), 1e-9) << k << " " << n;
  }
}

TEST(RankStructure, AtMostMLargeSingularValues) {
  sl::RandomSource rng(37);
  for (int k = 0; k < 10; ++k) {
    const int m = 1 + k % 3;
    const auto t = rng.fg_triple(2 + k % 4, m);
    const auto st = sl::LatticeState::generate(t, 20);
    for (int n = 0; n < 20; ++n) {
      for (const auto& sv : {st.singular_values_plus(n), st.singular_values_minus(n)}) {
        int big = 0;
        for (double v : sv) big += v > 1e-8;
        EXPECT_EQ(big, m);
      }
    }
  }
}

TEST(Monotone, RNonDecreasingQNonIncreasing) {
  sl::RandomSource rng(38);
  for (int k = 0; k < 10; ++k) {
    const auto t = rng.fg_triple(2 + k % 4, 1 + k % 2);
    const auto st = sl::LatticeState::generate(t, 20);
    const auto d = st.monotone_diagnostics(20);
    ASSERT_TRUE(d.r_defined);
    ASSERT_TRUE(d.q_defined);
    EXPECT_TRUE(d.r_non_decreasing());
    EXPECT_TRUE(d.q_non_increasing());
    for (double r : d.r_increment_formula_residuals) EXPECT_LT(r, 1e-9);
    for (double r : d.q_increment_formula_residuals) EXPECT_LT(r, 1e-9);
  }
}

TEST(LatticeState, SpinOutOfRange) {
  const auto st = sl::LatticeState::generate(oracle::Example{}.triple(), 5);
  try {
    st.spin(5);
    FAIL();
  } catch (const sl::Error& e) {
    EXPECT_EQ(e.code(), sl::ErrorCode::kPrecondition);
  }
  EXPECT_THROW(st.spin(-1), sl::Error);
}

TEST(LatticeState, SingularAlphaRejected) {
  ComplexMatrix a = ComplexMatrix::Zero(1, 1);
  ComplexMatrix z = ComplexMatrix::Zero(1, 1);
  try {
    sl::LatticeState::generate(sl::ParameterTriple(a, z, z), 3);
    FAIL();
  } catch (const sl::Error& e) {
    EXPECT_EQ(e.code(), sl::ErrorCode::kSingular);
  }
}

TEST(LatticeState, IndefiniteSigmaUsesRawFrames) {
  // Σ₀ = −I with α = −ih: the identity holds with Λ₀ = 0 replaced by scaled data.
  ComplexMatrix a(1, 1), t1(1, 1), t2(1, 1), s(1, 1);
  a(0, 0) = Complex(0.0, -2.0);
  t1(0, 0) = std::sqrt(2.0);
  t2(0, 0) = std::sqrt(2.0);
  s(0, 0) = -1.0;
  const sl::ParameterTriple t(a, t1, t2, sl::HermitianMatrix::from(s));
  ASSERT_LT(t.identity_residual(), 1e-14);
  const auto st = sl::LatticeState::generate(t, 5);
  EXPECT_EQ(st.frame(0).link, ComplexMatrix::Identity(1, 1));
  for (std::size_t n = 0; n < st.spins().size(); ++n) {
    const ComplexMatrix& sp = st.spins()[n].matrix();
    EXPECT_LT(oracle::max_abs(sp * sp - ComplexMatrix::Identity(2, 2)), 1e-9);
  }
}
