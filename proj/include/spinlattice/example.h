#pragma once

#include "spinlattice/triples.h"

namespace spinlattice {

/// Scalar family α = ih, Σ₀ = 1, |θ₁|² + |θ₂|² = 2h, with its explicit
/// solution of the recursion and the IHM flow.
class ScalarExample {
 public:
  /// θ₁ = θ₂ = √h. Throws Error(kPrecondition) unless h > 1.
  explicit ScalarExample(double h = 2.0);
  ScalarExample(double h, Complex theta1, Complex theta2);

  double h() const { return h_; }
  ParameterTriple triple() const;

  /// c_n = (h + 1)^{2n}|θ₁|² + (h − 1)^{2n}|θ₂|².
  double c(int n) const;
  /// Σ_n(t) = c_n/(2h^{2n+1}), independent of t.
  double sigma(int n) const;
  /// Λ_n(t).
  ComplexMatrix lambda(int n, double t) const;
  /// S_n(t).
  ComplexMatrix spin(int n, double t) const;
  /// φ(t, λ) = e^{4it/(1 − h²)}·iθ̄₁θ₂/(λ + i(|θ₂|² − h)).
  Complex phi(double t, Complex lambda) const;

 private:
  double h_;
  Complex theta1_;
  Complex theta2_;
};

}  // namespace spinlattice
