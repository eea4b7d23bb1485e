#pragma once

#include "spinlattice/matrix_kernel.h"

namespace spinlattice {

/// J = diag(I_m, −I_m) and the projectors P_± = (I ± J)/2.
struct SignatureMatrix {
  explicit SignatureMatrix(int m);

  int m = 0;
  ComplexMatrix j;
  ComplexMatrix p_plus;
  ComplexMatrix p_minus;
};

/// (α, θ₁, θ₂) together with Σ₀ (identity unless given). The constructor checks
/// shapes and finiteness only; the identity αΣ₀ − Σ₀α* = iΛ₀Λ₀* is checked by
/// validate().
class ParameterTriple {
 public:
  ParameterTriple() = default;
  ParameterTriple(ComplexMatrix alpha, ComplexMatrix theta1, ComplexMatrix theta2);
  ParameterTriple(ComplexMatrix alpha, ComplexMatrix theta1, ComplexMatrix theta2,
                  HermitianMatrix sigma0);

  const ComplexMatrix& alpha() const { return alpha_; }
  const ComplexMatrix& theta1() const { return theta1_; }
  const ComplexMatrix& theta2() const { return theta2_; }
  const HermitianMatrix& sigma0() const { return sigma0_; }
  /// [θ₁ θ₂], N×2m.
  ComplexMatrix lambda0() const;

  int order() const { return static_cast<int>(alpha_.rows()); }
  int m() const { return static_cast<int>(theta1_.cols()); }
  bool has_identity_sigma0() const;

  /// ‖αΣ₀ − Σ₀α* − iΛ₀Λ₀*‖_F.
  double identity_residual() const;
  /// ‖α‖·‖Σ₀‖ + ‖Λ₀‖², the scale the identity residual is measured against.
  double identity_scale() const;

 private:
  ComplexMatrix alpha_;
  ComplexMatrix theta1_;
  ComplexMatrix theta2_;
  HermitianMatrix sigma0_;
};

enum class TripleClass { kFG, kFGTilde, kIdentityOnly, kInvalid };

std::string_view to_string(TripleClass c);

struct AdmissibilityReport {
  bool identity_ok = false;
  double identity_residual = 0.0;
  bool theta1_full_range = false;
  bool theta2_full_range = false;
  bool sigma0_positive = false;
  SpectrumReport spectrum;
  TripleClass triple_class = TripleClass::kInvalid;
};

/// Runs every admissibility check. Throws Error(kInconsistent) when both pairs
/// are full range and the identity holds but σ(α) is not in the open upper
/// half plane.
AdmissibilityReport validate(const ParameterTriple& t, const Tolerances& tol = {});

/// (Σ₀^{−1/2}αΣ₀^{1/2}, Σ₀^{−1/2}θ₁, Σ₀^{−1/2}θ₂, I).
ParameterTriple normalize_sigma0(const ParameterTriple& t, const Tolerances& tol = {});

enum class ReduceOn { kTheta1, kTheta2 };

/// Compresses the triple onto the Krylov span of {αᵏθ_which}. Requires Σ₀ = I
/// and 0, i ∉ σ(α).
ParameterTriple reduce_triple(const ParameterTriple& t, ReduceOn which,
                              const Tolerances& tol = {});

}  // namespace spinlattice
