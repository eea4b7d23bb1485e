#pragma once

#include <optional>
#include <vector>

#include "spinlattice/realization.h"
#include "spinlattice/triples.h"

namespace spinlattice {

/// φ(λ) = iθ₁*Σ₀⁻¹(λI − β̃)⁻¹θ₂ with β̃ = α − iθ₂θ₂*Σ₀⁻¹. For Σ₀ = I this is
/// iθ₁*(λI − β)⁻¹θ₂ with β = α − iθ₂θ₂*.
class WeylFunction {
 public:
  explicit WeylFunction(const ParameterTriple& t);

  const ComplexMatrix& beta() const { return realization_.gamma(); }
  /// (β̃, Σ₀⁻¹θ₁, θ₂).
  const Realization& realization() const { return realization_; }
  int m() const { return realization_.m(); }

  ComplexMatrix operator()(Complex lambda, const Tolerances& tol = {}) const {
    return realization_.evaluate(lambda, tol);
  }
  /// I − iθ₂*Σ₀⁻¹(λI − β̃)⁻¹θ₂.
  ComplexMatrix d_inverse(Complex lambda, const Tolerances& tol = {}) const;

 private:
  Realization realization_;
  ComplexMatrix sigma_theta2_;  // Σ₀⁻¹θ₂
};

/// Throws Error(kAdmissibility) unless the triple is class FG or FG-tilde.
WeylFunction weyl(const ParameterTriple& t, const Tolerances& tol = {});

/// The m×m blocks of W_{α,Λ}(0, λ).
struct BlockDecomposition {
  ComplexMatrix a, b, c, d;
};

BlockDecomposition block_decomposition(const ParameterTriple& t, Complex lambda,
                                       const Tolerances& tol = {});

struct SummabilityReport {
  std::vector<double> terms;
  std::vector<double> partial_sums;
  bool is_cauchy = false;
  /// Largest residual of W_n[φ; I] = ((λ + i)/λ)ⁿW_{α,Λ}(n, λ)[0; d⁻¹] over the
  /// computed n, divided by max(1, ‖W_n‖‖[φ; I]‖): the left side is a decaying
  /// combination of a growing W_n. Absent when φ is overridden.
  std::optional<double> representation_residual;
};

/// Partial sums of Σ_n ‖W_n(λ)[φ(λ); I]‖_F² for n < n_terms with W_n built by
/// the one-step recursion. The Cauchy flag is set when the terms in the last
/// quarter add up to less than 1e−8 times the first term. Im λ < −1/2 is
/// required. `phi_override` replaces φ(λ), used to probe the dichotomy.
SummabilityReport summability_diagnostic(const ParameterTriple& t, Complex lambda, int n_terms,
                                         const std::optional<ComplexMatrix>& phi_override = {},
                                         const Tolerances& tol = {});

}  // namespace spinlattice
