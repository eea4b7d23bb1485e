#include "spinlattice/weyl_direct.h"

#include <cmath>
#include <memory>

#include "spinlattice/transfer.h"

namespace spinlattice {

namespace {

Realization build(const ParameterTriple& t) {
  const LuFactor sigma(t.sigma0().matrix(), "sigma0");
  const ComplexMatrix s_theta1 = sigma.solve(t.theta1());
  const ComplexMatrix s_theta2 = sigma.solve(t.theta2());
  const ComplexMatrix beta = t.alpha() - kI * t.theta2() * s_theta2.adjoint();
  return Realization(beta, s_theta1, t.theta2());
}

}  // namespace

WeylFunction::WeylFunction(const ParameterTriple& t) : realization_(build(t)) {
  sigma_theta2_ = LuFactor(t.sigma0().matrix(), "sigma0").solve(t.theta2());
}

ComplexMatrix WeylFunction::d_inverse(Complex lambda, const Tolerances& tol) const {
  const Realization r(beta(), sigma_theta2_, realization_.vartheta2());
  return identity(m()) - r.evaluate(lambda, tol);
}

WeylFunction weyl(const ParameterTriple& t, const Tolerances& tol) {
  const AdmissibilityReport r = validate(t, tol);
  if (r.triple_class != TripleClass::kFG && r.triple_class != TripleClass::kFGTilde) {
    throw Error(ErrorCode::kAdmissibility,
                "Weyl function needs a class FG or FG-tilde triple, got " +
                    std::string(to_string(r.triple_class)));
  }
  return WeylFunction(t);
}

BlockDecomposition block_decomposition(const ParameterTriple& t, Complex lambda,
                                       const Tolerances& tol) {
  const int n = t.order();
  const int m = t.m();
  const SpectrumReport s = spectrum(t.alpha(), tol);
  if (s.distance_to(lambda) <= tol.pole * std::max(1.0, t.alpha().norm())) {
    throw Error(ErrorCode::kPole, "λ is on the spectrum of alpha");
  }
  const ComplexMatrix l = t.lambda0();
  const ComplexMatrix resolved = LuFactor(lambda * identity(n) - t.alpha(), "λI − α").solve(l);
  const ComplexMatrix weighted = LuFactor(t.sigma0().matrix(), "sigma0").solve(l).adjoint();
  const ComplexMatrix w = identity(2 * m) + kI * weighted * resolved;
  return {w.topLeftCorner(m, m), w.topRightCorner(m, m), w.bottomLeftCorner(m, m),
          w.bottomRightCorner(m, m)};
}

SummabilityReport summability_diagnostic(const ParameterTriple& t, Complex lambda, int n_terms,
                                         const std::optional<ComplexMatrix>& phi_override,
                                         const Tolerances& tol) {
  if (!(lambda.imag() < -0.5)) {
    throw Error(ErrorCode::kPrecondition, "summability needs Im λ < −1/2");
  }
  if (n_terms < 4) throw Error(ErrorCode::kPrecondition, "need at least 4 terms");
  const int m = t.m();
  const WeylFunction phi_fn(t);
  const ComplexMatrix phi = phi_override ? *phi_override : phi_fn(lambda, tol);
  if (phi.rows() != m || phi.cols() != m) {
    throw Error(ErrorCode::kDimension, "φ must be m×m");
  }
  auto state = std::make_shared<const LatticeState>(LatticeState::generate(t, n_terms, tol));

  ComplexMatrix column(2 * m, m);
  column << phi, identity(m);
  std::optional<TransferFunction> transfer;
  ComplexMatrix tail_column;
  if (!phi_override) {
    transfer.emplace(state);
    tail_column = ComplexMatrix::Zero(2 * m, m);
    tail_column.bottomRows(m) = phi_fn.d_inverse(lambda, tol);
  }

  SummabilityReport r;
  ComplexMatrix w = identity(2 * m);
  double worst = 0.0;
  double sum = 0.0;
  for (int k = 0; k < n_terms; ++k) {
    if (k > 0) w = (identity(2 * m) - (kI / lambda) * state->spin(k - 1).matrix()) * w;
    const ComplexMatrix v = w * column;
    const double term = v.squaredNorm();
    sum += term;
    r.terms.push_back(term);
    r.partial_sums.push_back(sum);
    if (transfer) {
      const ComplexMatrix rhs =
          std::pow((lambda + kI) / lambda, k) * transfer->w_alpha_lambda(k, lambda) * tail_column;
      const double scale = std::max(1.0, w.norm() * column.norm());
      worst = std::max(worst, (v - rhs).norm() / scale);
    }
  }
  if (transfer) r.representation_residual = worst;
  const int quarter = n_terms - n_terms / 4;
  double tail = 0.0;
  for (int k = quarter; k < n_terms; ++k) tail += r.terms[k];
  r.is_cauchy = std::isfinite(tail) && tail < 1e-8 * std::max(r.terms.front(), 1e-300);
  return r;
}

}  // namespace spinlattice
