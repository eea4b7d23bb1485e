#pragma once

#include "spinlattice/realization.h"
#include "spinlattice/triples.h"

namespace spinlattice {

/// controllable = {γ, ϑ₂} full range; observable = {γ*, ϑ₁} full range.
Minimality check_minimal(const Realization& r, const Tolerances& tol = {});

/// Restricts to the reachable subspace of {γ, ϑ₂}, then to the observable
/// subspace of what remains.
Realization reduce_to_minimal(const Realization& r, const Tolerances& tol = {});

struct RiccatiSolution {
  HermitianMatrix x;
  /// ‖γX − Xγ* − i(Xϑ₁ϑ₁*X − ϑ₂ϑ₂*)‖_F.
  double residual_norm = 0.0;
  /// ‖γ‖‖X‖ + ‖X‖²‖ϑ₁‖² + ‖ϑ₂‖².
  double residual_scale = 0.0;
  int newton_iterations = 0;
  /// Condition number of the basis block inverted to form X.
  double subspace_condition = 0.0;
};

/// ‖γX − Xγ* − i(Xϑ₁ϑ₁*X − ϑ₂ϑ₂*)‖_F.
double riccati_residual(const Realization& r, const ComplexMatrix& x);

/// The positive definite solution of γX − Xγ* = i(Xϑ₁ϑ₁*X − ϑ₂ϑ₂*). Rewritten
/// as Ã*X + XÃ − Xϑ₁ϑ₁*X + ϑ₂ϑ₂* = 0 with Ã = iγ*, solved through the stable
/// invariant subspace of [[Ã, −ϑ₁ϑ₁*], [−ϑ₂ϑ₂*, −Ã*]] and polished by
/// Newton–Kleinman steps. Throws Error(kPrecondition) for a non-minimal input
/// and Error(kNumeric) when no positive definite solution is found.
RiccatiSolution solve_riccati(const Realization& r, const Tolerances& tol = {});

/// θ₁ = X^{1/2}ϑ₁, θ₂ = X^{−1/2}ϑ₂, β = X^{−1/2}γX^{1/2}, α = β + iθ₂θ₂*.
/// Non-minimal inputs are reduced first. The result is checked to be class FG.
ParameterTriple invert(const Realization& r, const Tolerances& tol = {});

/// ‖β − β* − i(θ₁θ₁* − θ₂θ₂*)‖_F with β = α − iθ₂θ₂*.
double symmetry_residual(const ParameterTriple& t);

}  // namespace spinlattice
