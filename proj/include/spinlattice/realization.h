#pragma once

#include <vector>

#include "spinlattice/matrix_kernel.h"

namespace spinlattice {

struct Minimality {
  bool controllable = false;
  bool observable = false;

  bool minimal() const { return controllable && observable; }
};

/// Strictly proper rational m×m function φ(λ) = iϑ₁*(λI − γ)⁻¹ϑ₂.
class Realization {
 public:
  Realization() = default;
  Realization(ComplexMatrix gamma, ComplexMatrix vartheta1, ComplexMatrix vartheta2);

  const ComplexMatrix& gamma() const { return gamma_; }
  const ComplexMatrix& vartheta1() const { return vartheta1_; }
  const ComplexMatrix& vartheta2() const { return vartheta2_; }
  int order() const { return static_cast<int>(gamma_.rows()); }
  int m() const { return static_cast<int>(vartheta1_.cols()); }

  /// Throws Error(kPole) when λ is within pole · max(1, ‖γ‖) of σ(γ).
  ComplexMatrix evaluate(Complex lambda, const Tolerances& tol = {}) const;

  /// (TγT⁻¹, T^{-*}ϑ₁, Tϑ₂): the same function in other state coordinates.
  Realization similarity(const ComplexMatrix& t) const;

 private:
  ComplexMatrix gamma_;
  ComplexMatrix vartheta1_;
  ComplexMatrix vartheta2_;
};

/// count points on |λ − center| = radius, at angles 2π(k + ½)/count.
std::vector<Complex> circle_grid(Complex center, double radius, int count);
/// 20 points on |λ| = 2(1 + ‖a‖_F).
std::vector<Complex> default_grid(const ComplexMatrix& a);

}  // namespace spinlattice
