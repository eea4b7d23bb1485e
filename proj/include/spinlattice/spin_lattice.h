#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spinlattice/triples.h"

namespace spinlattice {

/// One step of the recursion:
///   Λ_{n+1} = Λ_n + iα⁻¹Λ_nJ,
///   Σ_{n+1} = Σ_n + α⁻¹Σ_nα^{-*} + α⁻¹Λ_nJΛ_n*α^{-*}.
struct Step {
  ComplexMatrix lambda;
  HermitianMatrix sigma;
};

Step advance(const ComplexMatrix& lambda, const HermitianMatrix& sigma, const LuFactor& alpha, int m);
Step advance(const ComplexMatrix& lambda, const HermitianMatrix& sigma, const ComplexMatrix& alpha);

/// Λ_n = [(I + iα⁻¹)ⁿθ₁, (I − iα⁻¹)ⁿθ₂]. Valid for any Σ₀.
ComplexMatrix lambda_closed_form(int n, const ParameterTriple& t);

/// Coordinates at site n in which the Gram form is well conditioned. With
/// Σ_n = T_nT_n* (T_n accumulated Cholesky factors) the frame holds
/// α̂ = T_n⁻¹αT_n, Λ̂ = T_n⁻¹Λ_n and metric = T_n⁻¹Σ_nT_n^{-*} = I. When Σ₀ is
/// not positive definite T_n = I and the metric is Σ_n itself.
struct Frame {
  ComplexMatrix alpha;
  ComplexMatrix lambda;
  /// Λ̂*·metric⁻¹, so that Λ_n*Σ_n⁻¹Λ_n = weighted·lambda.
  ComplexMatrix weighted;
  /// T_n⁻¹Σ_nT_n^{-*}: I when normalized, Σ_n otherwise.
  ComplexMatrix metric;
  /// C with T_{n+1} = T_nC (identity in the unnormalized mode).
  ComplexMatrix link;
  /// Condition number of the matrix factored to reach this frame.
  double condition = 1.0;
};

struct MonotoneDiagnostics {
  bool r_defined = false;
  bool q_defined = false;
  std::vector<HermitianMatrix> r_sequence;
  std::vector<HermitianMatrix> q_sequence;
  std::vector<double> r_increments_min_eig;
  std::vector<double> q_increments_max_eig;
  /// ‖(R_{n+1} − R_n) − closed-form increment‖ relative to ‖R_{n+1}‖.
  std::vector<double> r_increment_formula_residuals;
  std::vector<double> q_increment_formula_residuals;
  /// Eigenvalue slack allowed for step n: 1e−10 · max(1, ‖R_{n+1}‖).
  std::vector<double> r_slack;
  std::vector<double> q_slack;

  bool r_non_decreasing() const;
  bool q_non_increasing() const;
};

/// Λ_n, Σ_n, S_n up to a horizon, with the frames used to evaluate every
/// Σ_n⁻¹ expression. Immutable once built.
class LatticeState {
 public:
  /// Runs the recursion to n_max. Throws Error(kSingular) if α is singular and
  /// Error(kOverflow) once ‖Σ_n‖ exceeds the overflow tolerance. A singular or
  /// ill-conditioned Σ_n does not throw here; it truncates the range on which
  /// spins are available, and spin(n) reports it.
  static LatticeState generate(const ParameterTriple& t, int n_max = 50,
                               const Tolerances& tol = {});

  const ParameterTriple& triple() const { return triple_; }
  const Tolerances& tolerances() const { return tol_; }
  int horizon() const { return n_max_; }
  int m() const { return triple_.m(); }
  const SignatureMatrix& signature() const { return sig_; }
  const LuFactor& alpha_lu() const { return alpha_lu_; }

  const std::vector<ComplexMatrix>& lambdas() const { return lambdas_; }
  const std::vector<HermitianMatrix>& sigmas() const { return sigmas_; }
  /// S_0 … S_{k−1} for the largest k ≤ n_max with Σ_0 … Σ_k usable.
  const std::vector<HermitianMatrix>& spins() const { return spins_; }
  /// cond(Σ_n) of the raw recursion.
  const std::vector<double>& conditioning() const { return conditioning_; }
  /// Asymmetry of Σ_n before symmetrization.
  const std::vector<double>& sigma_asymmetry() const { return sigma_asymmetry_; }
  /// ‖S_n − S_n*‖_F before symmetrization.
  const std::vector<double>& spin_asymmetry() const { return spin_asymmetry_; }

  /// Number of frames available (sites n with usable Σ_n).
  int frame_count() const { return static_cast<int>(frames_.size()); }
  const Frame& frame(int n) const;

  /// Throws Error(kConditioning) naming n when Σ_n or Σ_{n+1} is not usable,
  /// Error(kPrecondition) when n is outside [0, n_max).
  const HermitianMatrix& spin(int n) const;
  /// Λ_n*Σ_n⁻¹Λ_n.
  ComplexMatrix gram(int n) const;

  double involution_residual(int n) const;
  /// spin_tol · cond_n · cond_{n+1} using the conditions of the factored
  /// matrices.
  double involution_bound(int n, double spin_tol) const;

  /// ‖αΣ_n − Σ_nα* − iΛ_nΛ_n*‖_F and its scale ‖α‖‖Σ_n‖ + ‖Λ_n‖².
  double identity_residual(int n) const;
  double identity_scale(int n) const;

  /// ‖Λ_{n+1}*Σ_{n+1}⁻¹(α² + I) − Λ_n*Σ_n⁻¹α² + iS_nΛ_n*Σ_n⁻¹α‖_F, evaluated
  /// after right multiplication by T_n (the frame-n representative).
  double k_residual(int n) const;

  /// Singular values of I + S_n and I − S_n.
  std::vector<double> singular_values_plus(int n) const;
  std::vector<double> singular_values_minus(int n) const;

  MonotoneDiagnostics monotone_diagnostics(int n_last = -1) const;

  /// Why the frame range stopped short of the horizon, if it did.
  const std::optional<std::string>& truncation() const { return truncation_; }

 private:
  LatticeState(ParameterTriple t, int n_max, const Tolerances& tol);

  void require_site(int n, int upper) const;

  ParameterTriple triple_;
  int n_max_ = 0;
  Tolerances tol_;
  SignatureMatrix sig_{1};
  LuFactor alpha_lu_;

  std::vector<ComplexMatrix> lambdas_;
  std::vector<HermitianMatrix> sigmas_;
  std::vector<double> conditioning_;
  std::vector<double> sigma_asymmetry_;
  std::vector<Frame> frames_;
  std::vector<HermitianMatrix> spins_;
  std::vector<double> spin_asymmetry_;
  std::optional<std::string> truncation_;
};

}  // namespace spinlattice
