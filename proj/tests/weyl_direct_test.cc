#include <gtest/gtest.h>

#include "oracles.h"
#include "spinlattice/random.h"
#include "spinlattice/transfer.h"
#include "spinlattice/weyl_direct.h"

namespace sl = spinlattice;
using sl::Complex;
using sl::ComplexMatrix;
using sl::kI;

namespace {

sl::ParameterTriple general_sigma(sl::RandomSource& rng, const sl::ParameterTriple& base) {
  const int n = base.order();
  const ComplexMatrix r = rng.well_conditioned(n, 5.0);
  return {r * base.alpha() * r.inverse(), r * base.theta1(), r * base.theta2(),
          sl::HermitianMatrix::symmetrized(r * r.adjoint())};
}

}  // namespace

TEST(Weyl, ExampleClosedForm) {
  const oracle::Example ex;
  const auto phi = sl::weyl(ex.triple());
  EXPECT_LT(oracle::max_abs(phi.beta()), 1e-15);
  for (Complex lam : sl::circle_grid(0.0, 3.0, 12)) {
    EXPECT_NEAR(std::abs(phi(lam)(0, 0) - ex.phi(0.0, lam)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(phi(lam)(0, 0) - 2.0 * kI / lam), 0.0, 1e-12);
  }
}

TEST(Weyl, RealizationEqualsBOverD) {
  sl::RandomSource rng(51);
  for (int k = 0; k < 10; ++k) {
    const auto t = rng.fg_triple(1 + k % 5, 1 + k % 3);
    const auto phi = sl::weyl(t);
    for (Complex lam : sl::default_grid(t.alpha())) {
      const auto b = sl::block_decomposition(t, lam);
      const ComplexMatrix bd = b.b * b.d.inverse();
      EXPECT_LE(sl::relative_residual(phi(lam), bd), 1e-10);
      EXPECT_LE(sl::relative_residual(phi.d_inverse(lam), b.d.inverse()), 1e-10);
    }
  }
}

TEST(Weyl, GeneralSigmaMatchesNormalized) {
  sl::RandomSource rng(52);
  for (int k = 0; k < 10; ++k) {
    const auto base = rng.fg_triple(1 + k % 4, 1 + k % 2);
    const auto t = general_sigma(rng, base);
    const auto a = sl::weyl(t);
    const auto b = sl::weyl(sl::normalize_sigma0(t));
    const auto c = sl::weyl(base);
    for (Complex lam : sl::default_grid(t.alpha())) {
      EXPECT_LE(sl::relative_residual(a(lam), b(lam)), 1e-10);
      EXPECT_LE(sl::relative_residual(a(lam), c(lam)), 1e-10);
      const auto blocks = sl::block_decomposition(t, lam);
      EXPECT_LE(sl::relative_residual(a(lam), blocks.b * blocks.d.inverse()), 1e-10);
    }
  }
}

TEST(Weyl, RejectsNonAdmissible) {
  ComplexMatrix a(1, 1), t1(1, 1), t2(1, 1);
  a(0, 0) = kI;
  t1(0, 0) = 0.0;
  t2(0, 0) = std::sqrt(2.0);
  try {
    sl::weyl(sl::ParameterTriple(a, t1, t2));
    FAIL();
  } catch (const sl::Error& e) {
    EXPECT_EQ(e.code(), sl::ErrorCode::kAdmissibility);
  }
}

TEST(Weyl, PoleOnBeta) {
  const auto phi = sl::weyl(oracle::Example{}.triple());
  EXPECT_THROW(phi(0.0), sl::Error);
}

TEST(Summability, DichotomyOnTenTriples) {
  sl::RandomSource rng(53);
  const Complex lam(0.0, -2.0);
  for (int k = 0; k < 10; ++k) {
    const auto t = rng.fg_triple(1 + k % 4, 1 + k % 2);
    const auto good = sl::summability_diagnostic(t, lam, 32);
    EXPECT_TRUE(good.is_cauchy);
    ASSERT_TRUE(good.representation_residual.has_value());
    EXPECT_LE(*good.representation_residual, 1e-9);
    const ComplexMatrix bad = sl::weyl(t)(lam) + 0.1 * ComplexMatrix::Identity(t.m(), t.m());
    const auto r = sl::summability_diagnostic(t, lam, 32, bad);
    EXPECT_FALSE(r.is_cauchy);
    EXPECT_FALSE(r.representation_residual.has_value());
    EXPECT_GT(r.partial_sums.back(), 2.0 * r.partial_sums[15]);
  }
}

TEST(Summability, ExampleTermsDecay) {
  const auto r = sl::summability_diagnostic(oracle::Example{}.triple(), Complex(0.0, -2.0), 20);
  EXPECT_TRUE(r.is_cauchy);
  for (std::size_t k = 1; k < r.terms.size(); ++k) EXPECT_LE(r.terms[k], r.terms[k - 1] + 1e-15);
}

TEST(Summability, Preconditions) {
  const auto t = oracle::Example{}.triple();
  EXPECT_THROW(sl::summability_diagnostic(t, Complex(0.0, -0.25), 10), sl::Error);
  EXPECT_THROW(sl::summability_diagnostic(t, Complex(0.0, -2.0), 3), sl::Error);
}
