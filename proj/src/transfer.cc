#include "spinlattice/transfer.h"

#include <algorithm>
#include <sstream>

namespace spinlattice {

double relative_residual(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  return (lhs - rhs).norm() / std::max({1.0, lhs.norm(), rhs.norm()});
}

TransferFunction::TransferFunction(std::shared_ptr<const LatticeState> state)
    : state_(std::move(state)) {
  if (!state_) throw Error(ErrorCode::kPrecondition, "null lattice state");
  spectrum_ = spectrum(state_->triple().alpha(), state_->tolerances());
  pole_radius_ = state_->tolerances().pole * std::max(1.0, state_->triple().alpha().norm());
}

void TransferFunction::require_regular(Complex lambda) const {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw Error(ErrorCode::kNumeric, "λ is not finite");
  }
  if (spectrum_.distance_to(lambda) <= pole_radius_) {
    const Complex e = spectrum_.nearest(lambda);
    std::ostringstream os;
    os << "λ = " << lambda << " is within " << pole_radius_ << " of the eigenvalue " << e;
    throw Error(ErrorCode::kPole, os.str());
  }
}

ComplexMatrix TransferFunction::w_alpha_lambda(int n, Complex lambda) const {
  require_regular(lambda);
  const Frame& f = state_->frame(n);
  const int order = state_->triple().order();
  ComplexMatrix shifted = lambda * identity(order) - f.alpha;
  const ComplexMatrix resolved = LuFactor(shifted, "λI − α").solve(f.lambda);
  return identity(2 * state_->m()) + kI * f.weighted * resolved;
}

ComplexMatrix TransferFunction::w_inverse(int n, Complex lambda) const {
  return w_alpha_lambda(n, std::conj(lambda)).adjoint();
}

ComplexMatrix TransferFunction::j_power(int n, Complex lambda) const {
  if (std::abs(lambda) <= pole_radius_) throw Error(ErrorCode::kPole, "λ = 0 is a pole of (I − (i/λ)J)ⁿ");
  const int m = state_->m();
  ComplexMatrix d = ComplexMatrix::Zero(2 * m, 2 * m);
  const Complex up = std::pow(1.0 - kI / lambda, n);
  const Complex down = std::pow(1.0 + kI / lambda, n);
  for (int k = 0; k < m; ++k) {
    d(k, k) = up;
    d(m + k, m + k) = down;
  }
  return d;
}

ComplexMatrix TransferFunction::fundamental(int n, Complex lambda) const {
  const ComplexMatrix d = j_power(n, lambda);
  return w_alpha_lambda(n, lambda) * d * w_inverse(0, lambda);
}

double TransferFunction::fundamental_recursion_residual(int n, Complex lambda) const {
  const int m = state_->m();
  const ComplexMatrix g = identity(2 * m) - (kI / lambda) * state_->spin(n).matrix();
  return relative_residual(fundamental(n + 1, lambda), g * fundamental(n, lambda));
}

double TransferFunction::transfer_identity_residual(int n, Complex lambda) const {
  const int m = state_->m();
  const ComplexMatrix& j = state_->signature().j;
  const ComplexMatrix lhs = w_alpha_lambda(n + 1, lambda) * (identity(2 * m) - (kI / lambda) * j);
  const ComplexMatrix rhs =
      (identity(2 * m) - (kI / lambda) * state_->spin(n).matrix()) * w_alpha_lambda(n, lambda);
  return relative_residual(lhs, rhs);
}

double TransferFunction::inverse_product_residual(int n, Complex lambda) const {
  return relative_residual(w_alpha_lambda(n, lambda) * w_inverse(n, lambda),
                           identity(2 * state_->m()));
}

double TransferFunction::gram_identity_residual(int n, Complex lambda) const {
  const ComplexMatrix w = w_alpha_lambda(n, lambda);
  const Frame& f = state_->frame(n);
  const int order = state_->triple().order();
  const ComplexMatrix v =
      LuFactor(lambda * identity(order) - f.alpha, "λI − α").solve(f.lambda);
  const ComplexMatrix middle = LuFactor(f.metric, "sigma").solve(v);
  const ComplexMatrix rhs =
      identity(2 * state_->m()) - kI * (lambda - std::conj(lambda)) * v.adjoint() * middle;
  return relative_residual(w.adjoint() * w, rhs);
}

double TransferFunction::contractivity(int n, Complex lambda) const {
  return largest_singular_value(w_alpha_lambda(n, lambda));
}

BlockIdentityResiduals TransferFunction::block_identity_residuals(int n) const {
  if (spectrum_.contains_zero || spectrum_.contains_plus_i || spectrum_.contains_minus_i) {
    throw Error(ErrorCode::kSpectrum, "block identities need 0, ±i outside σ(α)");
  }
  const int m = state_->m();
  const int order = state_->triple().order();
  const Frame& f = state_->frame(n);
  const ComplexMatrix w_n_plus = w_alpha_lambda(n, kI);
  const ComplexMatrix w_n_minus = w_alpha_lambda(n, -kI);
  const ComplexMatrix w_next_plus = w_alpha_lambda(n + 1, kI);
  const ComplexMatrix w_next_minus = w_alpha_lambda(n + 1, -kI);
  const ComplexMatrix shifted =
      LuFactor(f.alpha * f.alpha + identity(order), "α² + I").solve(f.lambda);
  const ComplexMatrix core = f.weighted * shifted;  // Λ_n*Σ_n⁻¹(α² + I)⁻¹Λ_n

  BlockIdentityResiduals r;
  {
    const ComplexMatrix lhs = w_n_plus.leftCols(m);
    const ComplexMatrix rhs =
        w_next_minus.leftCols(m) *
        (identity(m) + 2.0 * w_n_plus.leftCols(m).adjoint() * core.leftCols(m));
    r.first_block = relative_residual(lhs, rhs);
  }
  {
    const ComplexMatrix lhs = w_n_minus.rightCols(m);
    const ComplexMatrix rhs =
        w_next_plus.rightCols(m) *
        (identity(m) - 2.0 * w_n_minus.rightCols(m).adjoint() * core.rightCols(m));
    r.second_block = relative_residual(lhs, rhs);
  }
  const ComplexMatrix& s = state_->spin(n).matrix();
  r.plus_factorization = relative_residual(
      identity(2 * m) + s, 2.0 * w_next_minus.leftCols(m) * w_n_plus.leftCols(m).adjoint());
  r.minus_factorization = relative_residual(
      identity(2 * m) - s, 2.0 * w_next_plus.rightCols(m) * w_n_minus.rightCols(m).adjoint());
  return r;
}

}  // namespace spinlattice
