#include "spinlattice/triples.h"

#include <algorithm>
#include <utility>

namespace spinlattice {

SignatureMatrix::SignatureMatrix(int m_) : m(m_) {
  j = ComplexMatrix::Identity(2 * m, 2 * m);
  j.bottomRightCorner(m, m) *= -1.0;
  p_plus = ComplexMatrix::Zero(2 * m, 2 * m);
  p_plus.topLeftCorner(m, m).setIdentity();
  p_minus = ComplexMatrix::Zero(2 * m, 2 * m);
  p_minus.bottomRightCorner(m, m).setIdentity();
}

ParameterTriple::ParameterTriple(ComplexMatrix alpha, ComplexMatrix theta1, ComplexMatrix theta2)
    : ParameterTriple(alpha, std::move(theta1), std::move(theta2),
                      HermitianMatrix::identity(static_cast<int>(alpha.rows()))) {}

ParameterTriple::ParameterTriple(ComplexMatrix alpha, ComplexMatrix theta1, ComplexMatrix theta2,
                                 HermitianMatrix sigma0)
    : alpha_(std::move(alpha)),
      theta1_(std::move(theta1)),
      theta2_(std::move(theta2)),
      sigma0_(std::move(sigma0)) {
  require_square(alpha_, "alpha");
  const auto n = alpha_.rows();
  if (theta1_.rows() != n || theta2_.rows() != n) {
    throw Error(ErrorCode::kDimension, "theta1 and theta2 must have " + std::to_string(n) + " rows");
  }
  if (theta1_.cols() != theta2_.cols()) {
    throw Error(ErrorCode::kDimension, "theta1 has " + std::to_string(theta1_.cols()) +
                                           " columns, theta2 has " +
                                           std::to_string(theta2_.cols()));
  }
  if (theta1_.cols() == 0) throw Error(ErrorCode::kDimension, "m must be positive");
  if (sigma0_.order() != n) {
    throw Error(ErrorCode::kDimension, "sigma0 must be of order " + std::to_string(n));
  }
  require_finite(alpha_, "alpha");
  require_finite(theta1_, "theta1");
  require_finite(theta2_, "theta2");
  require_finite(sigma0_.matrix(), "sigma0");
}

ComplexMatrix ParameterTriple::lambda0() const {
  ComplexMatrix l(order(), 2 * m());
  l << theta1_, theta2_;
  return l;
}

bool ParameterTriple::has_identity_sigma0() const {
  return sigma0_.matrix() == ComplexMatrix::Identity(order(), order());
}

double ParameterTriple::identity_residual() const {
  const ComplexMatrix l = lambda0();
  const ComplexMatrix& s = sigma0_.matrix();
  return (alpha_ * s - s * alpha_.adjoint() - kI * l * l.adjoint()).norm();
}

double ParameterTriple::identity_scale() const {
  const double l = lambda0().norm();
  return alpha_.norm() * sigma0_.matrix().norm() + l * l;
}

std::string_view to_string(TripleClass c) {
  switch (c) {
    case TripleClass::kFG: return "FG";
    case TripleClass::kFGTilde: return "FG-tilde";
    case TripleClass::kIdentityOnly: return "identity-only";
    case TripleClass::kInvalid: return "invalid";
  }
  return "invalid";
}

AdmissibilityReport validate(const ParameterTriple& t, const Tolerances& tol) {
  AdmissibilityReport r;
  r.identity_residual = t.identity_residual();
  r.identity_ok = r.identity_residual <= tol.identity * std::max(1.0, t.identity_scale());
  r.theta1_full_range = is_full_range(t.alpha(), t.theta1(), tol).full_range;
  r.theta2_full_range = is_full_range(t.alpha(), t.theta2(), tol).full_range;
  r.sigma0_positive = t.sigma0().is_positive_definite(tol);
  r.spectrum = spectrum(t.alpha(), tol);

  if (!r.identity_ok) {
    r.triple_class = TripleClass::kInvalid;
    return r;
  }
  if (r.theta1_full_range && r.theta2_full_range && r.sigma0_positive) {
    if (!(r.spectrum.min_imag_part > tol.spectrum)) {
      throw Error(ErrorCode::kInconsistent,
                  "admissible triple with an eigenvalue of imaginary part " +
                      std::to_string(r.spectrum.min_imag_part));
    }
    r.triple_class = TripleClass::kFG;
    return r;
  }
  const bool lambda_full = is_full_range(t.alpha(), t.lambda0(), tol).full_range;
  if (r.sigma0_positive && !r.spectrum.contains_zero && !r.spectrum.contains_plus_i && lambda_full) {
    r.triple_class = TripleClass::kFGTilde;
  } else {
    r.triple_class = TripleClass::kIdentityOnly;
  }
  return r;
}

ParameterTriple normalize_sigma0(const ParameterTriple& t, const Tolerances& tol) {
  if (t.has_identity_sigma0()) return t;
  if (!t.sigma0().is_positive_definite(tol)) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "sigma0 minimum eigenvalue " + std::to_string(t.sigma0().min_eigenvalue()));
  }
  const ComplexMatrix root = hermitian_sqrt(t.sigma0(), tol).matrix();
  const ComplexMatrix inv_root = hermitian_inverse_sqrt(t.sigma0(), tol).matrix();
  return ParameterTriple(inv_root * t.alpha() * root, inv_root * t.theta1(), inv_root * t.theta2());
}

ParameterTriple reduce_triple(const ParameterTriple& t, ReduceOn which, const Tolerances& tol) {
  if (!t.has_identity_sigma0()) {
    throw Error(ErrorCode::kPrecondition, "reduction expects sigma0 = I; normalize first");
  }
  const SpectrumReport s = spectrum(t.alpha(), tol);
  if (s.contains_zero || s.contains_plus_i) {
    throw Error(ErrorCode::kSpectrum, "reduction needs 0, i outside the spectrum of alpha");
  }
  const ComplexMatrix& theta = which == ReduceOn::kTheta1 ? t.theta1() : t.theta2();
  const ComplexMatrix q = krylov_basis(t.alpha(), theta, tol);
  if (q.cols() == t.order()) return t;
  return ParameterTriple(q.adjoint() * t.alpha() * q, q.adjoint() * t.theta1(),
                         q.adjoint() * t.theta2());
}

}  // namespace spinlattice
