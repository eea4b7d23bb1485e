#include <gtest/gtest.h>

#include "oracles.h"
#include "spinlattice/random.h"
#include "spinlattice/spin_lattice.h"
#include "spinlattice/triples.h"

namespace sl = spinlattice;
using sl::Complex;
using sl::ComplexMatrix;
using sl::kI;

namespace {

sl::ParameterTriple scalar(Complex a, Complex t1, Complex t2) {
  ComplexMatrix ma(1, 1), m1(1, 1), m2(1, 1);
  ma(0, 0) = a;
  m1(0, 0) = t1;
  m2(0, 0) = t2;
  return {ma, m1, m2};
}

}  // namespace

TEST(Signature, Blocks) {
  const sl::SignatureMatrix s(2);
  EXPECT_EQ(s.j.rows(), 4);
  EXPECT_EQ(s.j(0, 0), Complex(1.0));
  EXPECT_EQ(s.j(3, 3), Complex(-1.0));
  EXPECT_LT(oracle::max_abs(s.p_plus + s.p_minus - ComplexMatrix::Identity(4, 4)), 0.0 + 1e-300);
  EXPECT_LT(oracle::max_abs(s.p_plus * s.p_plus - s.p_plus), 1e-300);
}

TEST(ParameterTriple, ShapeMismatchIsDimensionError) {
  try {
    sl::ParameterTriple(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 1),
                        ComplexMatrix::Zero(3, 1));
    FAIL();
  } catch (const sl::Error& e) {
    EXPECT_EQ(e.code(), sl::ErrorCode::kDimension);
  }
  EXPECT_THROW(sl::ParameterTriple(ComplexMatrix::Identity(2, 2), ComplexMatrix::Zero(2, 1),
                                   ComplexMatrix::Zero(2, 2)),
               sl::Error);
}

TEST(Validate, ExampleIsFG) {
  const auto r = sl::validate(oracle::Example{}.triple());
  EXPECT_EQ(r.triple_class, sl::TripleClass::kFG);
  EXPECT_TRUE(r.identity_ok);
  EXPECT_LT(r.identity_residual, 1e-15);
}

TEST(Validate, ZeroTheta1IsNotFG) {
  // α = i, θ₁ = 0, θ₂θ₂* = 2: the identity holds but the θ₁ pair is not full range.
  const auto r = sl::validate(scalar(kI, 0.0, std::sqrt(2.0)));
  EXPECT_NE(r.triple_class, sl::TripleClass::kFG);
  EXPECT_TRUE(r.identity_ok);
  EXPECT_FALSE(r.theta1_full_range);
  EXPECT_TRUE(r.spectrum.contains_plus_i);
}

TEST(Validate, IdentityViolationIsInvalid) {
  const auto r = sl::validate(scalar(Complex(0.0, 2.0), 1.0, 1.0));
  EXPECT_FALSE(r.identity_ok);
  EXPECT_EQ(r.triple_class, sl::TripleClass::kInvalid);
}

TEST(Validate, RandomCorpusIsFG) {
  sl::RandomSource rng(21);
  for (int k = 0; k < 20; ++k) {
    const auto t = rng.fg_triple(1 + k % 6, 1 + k % 3);
    const auto r = sl::validate(t);
    EXPECT_EQ(r.triple_class, sl::TripleClass::kFG);
    EXPECT_GT(r.spectrum.min_imag_part, 0.0);
    for (const auto& e : r.spectrum.eigenvalues) EXPECT_GE(std::abs(e), 2.0 - 1e-9);
  }
}

TEST(Validate, FGTildeNeedsPositiveSigma) {
  // Σ₀ not the identity, α with eigenvalues off ±i, 0.
  sl::RandomSource rng(22);
  const auto base = rng.fg_triple(3, 1);
  const auto p = rng.positive_definite(3);
  const auto root = sl::hermitian_sqrt(p);
  const ComplexMatrix a = root.matrix() * base.alpha() * root.matrix().inverse();
  const sl::ParameterTriple t(a, root.matrix() * base.theta1(), root.matrix() * base.theta2(),
                              sl::HermitianMatrix::symmetrized(root.matrix() * root.matrix()));
  const auto r = sl::validate(t);
  EXPECT_TRUE(r.identity_ok);
  EXPECT_TRUE(r.sigma0_positive);
  EXPECT_EQ(r.triple_class, sl::TripleClass::kFG);
}

TEST(Normalize, IdentityIsUntouched) {
  const auto t = oracle::Example{}.triple();
  const auto n = sl::normalize_sigma0(t);
  EXPECT_EQ(n.alpha(), t.alpha());
  EXPECT_EQ(n.theta1(), t.theta1());
}

TEST(Normalize, PreservesSpins) {
  sl::RandomSource rng(23);
  for (int k = 0; k < 5; ++k) {
    const auto base = rng.fg_triple(3, 2);
    const ComplexMatrix r = rng.positive_definite(3, 0.5, 2.0).matrix();
    const sl::ParameterTriple t(r * base.alpha() * r.inverse(), r * base.theta1(),
                                r * base.theta2(), sl::HermitianMatrix::symmetrized(r * r));
    ASSERT_LT(t.identity_residual() / t.identity_scale(), 1e-12);
    const auto n = sl::normalize_sigma0(t);
    EXPECT_TRUE(n.has_identity_sigma0());
    const auto a = sl::LatticeState::generate(t, 10);
    const auto b = sl::LatticeState::generate(n, 10);
    for (int s = 0; s < 10; ++s) {
      EXPECT_LT(oracle::max_abs(a.spin(s).matrix() - b.spin(s).matrix()), 1e-9);
    }
  }
}

TEST(Reduce, RequiresIdentitySigma) {
  sl::RandomSource rng(24);
  const auto base = rng.fg_triple(2, 1);
  const sl::ParameterTriple t(base.alpha(), base.theta1(), base.theta2(),
                              sl::HermitianMatrix::symmetrized(2.0 * ComplexMatrix::Identity(2, 2)));
  try {
    sl::reduce_triple(t, sl::ReduceOn::kTheta2);
    FAIL();
  } catch (const sl::Error& e) {
    EXPECT_EQ(e.code(), sl::ErrorCode::kPrecondition);
  }
}

TEST(Reduce, RejectsIInSpectrum) {
  try {
    sl::reduce_triple(scalar(kI, 0.0, std::sqrt(2.0)), sl::ReduceOn::kTheta2);
    FAIL();
  } catch (const sl::Error& e) {
    EXPECT_EQ(e.code(), sl::ErrorCode::kSpectrum);
  }
}

TEST(Reduce, DiagonalExampleDropsToOrderOne) {
  // α = diag(2i, 3i), θ₁ = diag(√2, √6), θ₂ = [[√2, 0], [0, 0]]: the θ₂ span is e₁.
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = Complex(0.0, 2.0);
  a(1, 1) = Complex(0.0, 3.0);
  ComplexMatrix t1 = ComplexMatrix::Zero(2, 2), t2 = ComplexMatrix::Zero(2, 2);
  t1(0, 0) = std::sqrt(2.0);
  t1(1, 1) = std::sqrt(6.0);
  t2(0, 0) = std::sqrt(2.0);
  const sl::ParameterTriple t(a, t1, t2);
  ASSERT_LT(t.identity_residual(), 1e-14);
  const auto r = sl::reduce_triple(t, sl::ReduceOn::kTheta2);
  EXPECT_EQ(r.order(), 1);
  const auto full = sl::LatticeState::generate(t, 4);
  const auto small = sl::LatticeState::generate(r, 4);
  for (int n = 0; n < 4; ++n) {
    EXPECT_LT(oracle::max_abs(full.spin(n).matrix() - small.spin(n).matrix()), 1e-12);
  }
}

TEST(Reduce, PaddedTriplePreservesSpins) {
  sl::RandomSource rng(25);
  for (int k = 0; k < 5; ++k) {
    const auto core = rng.fg_triple(2 + k % 2, 1 + k % 2);
    const auto big = oracle::padded_triple(rng, core, 2);
    ASSERT_LT(big.identity_residual() / big.identity_scale(), 1e-12);
    EXPECT_FALSE(sl::validate(big).theta2_full_range);
    const auto r = sl::reduce_triple(big, sl::ReduceOn::kTheta2);
    EXPECT_EQ(r.order(), core.order());
    const auto a = sl::LatticeState::generate(big, 10);
    const auto b = sl::LatticeState::generate(r, 10);
    for (int n = 0; n <= 10 - 1; ++n) {
      EXPECT_LT(oracle::max_abs(a.spin(n).matrix() - b.spin(n).matrix()), 1e-10) << n;
    }
  }
}

TEST(Reduce, PaddedTripleTheta1PreservesSpins) {
  sl::RandomSource rng(26);
  for (int k = 0; k < 5; ++k) {
    const auto core = rng.fg_triple(2, 1 + k % 2);
    const auto big = oracle::padded_triple_theta1(rng, core, 1 + k % 2);
    ASSERT_LT(big.identity_residual() / big.identity_scale(), 1e-12);
    EXPECT_FALSE(sl::validate(big).theta1_full_range);
    const auto r = sl::reduce_triple(big, sl::ReduceOn::kTheta1);
    EXPECT_EQ(r.order(), core.order());
    const auto a = sl::LatticeState::generate(big, 10);
    const auto b = sl::LatticeState::generate(r, 10);
    for (int n = 0; n < 10; ++n) {
      EXPECT_LT(oracle::max_abs(a.spin(n).matrix() - b.spin(n).matrix()), 1e-10) << n;
    }
  }
}
