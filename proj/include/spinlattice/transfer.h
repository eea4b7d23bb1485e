#pragma once

#include <memory>

#include "spinlattice/spin_lattice.h"

namespace spinlattice {

struct BlockIdentityResiduals {
  double first_block = 0.0;   // columns 1..m at λ = ±i
  double second_block = 0.0;  // columns m+1..2m
  double plus_factorization = 0.0;   // I + S_n = 2(W(n+1,−i))₁(W(n,i))₁*
  double minus_factorization = 0.0;  // I − S_n = 2(W(n+1,i))₂(W(n,−i))₂*
};

/// W_{α,Λ}(n, λ) = I + iΛ_n*Σ_n⁻¹(λI − α)⁻¹Λ_n and the fundamental solution
/// built from it. All residuals are relative: the Frobenius norm of the
/// difference divided by max(1, norm of the larger side).
class TransferFunction {
 public:
  explicit TransferFunction(std::shared_ptr<const LatticeState> state);

  const LatticeState& state() const { return *state_; }
  const SpectrumReport& alpha_spectrum() const { return spectrum_; }

  /// Throws Error(kPole) naming the nearest eigenvalue when λ is within
  /// pole · max(1, ‖α‖) of σ(α).
  ComplexMatrix w_alpha_lambda(int n, Complex lambda) const;
  /// W_{α,Λ}(n, λ̄)*, the inverse of W_{α,Λ}(n, λ).
  ComplexMatrix w_inverse(int n, Complex lambda) const;
  /// (I − (i/λ)J)ⁿ.
  ComplexMatrix j_power(int n, Complex lambda) const;
  /// W_n(λ) = W_{α,Λ}(n, λ)(I − (i/λ)J)ⁿW_{α,Λ}(0, λ)⁻¹.
  ComplexMatrix fundamental(int n, Complex lambda) const;
  /// W_{n+1}(λ) − (I − (i/λ)S_n)W_n(λ).
  double fundamental_recursion_residual(int n, Complex lambda) const;

  double transfer_identity_residual(int n, Complex lambda) const;
  /// W(n, λ)·w_inverse(n, λ) − I.
  double inverse_product_residual(int n, Complex lambda) const;
  /// W*W = I − i(λ − λ̄)Λ_n*(λ̄ − α*)⁻¹Σ_n⁻¹(λ − α)⁻¹Λ_n.
  double gram_identity_residual(int n, Complex lambda) const;
  /// Largest singular value of W_{α,Λ}(n, λ).
  double contractivity(int n, Complex lambda) const;

  /// Requires 0, ±i ∉ σ(α); throws Error(kSpectrum) otherwise.
  BlockIdentityResiduals block_identity_residuals(int n) const;

  void require_regular(Complex lambda) const;

 private:
  std::shared_ptr<const LatticeState> state_;
  SpectrumReport spectrum_;
  double pole_radius_ = 0.0;
};

double relative_residual(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

}  // namespace spinlattice
