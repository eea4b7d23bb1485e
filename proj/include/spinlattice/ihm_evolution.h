#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "spinlattice/realization.h"
#include "spinlattice/spin_lattice.h"
#include "spinlattice/transfer.h"

namespace spinlattice {

enum class SigmaMethod { kAuto, kSylvester, kOde };

std::string_view to_string(SigmaMethod m);

/// S = [[s3, s1 − is2], [s1 + is2, −s3]].
struct SpinVector {
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 0.0;

  double norm() const;
  double dot(const SpinVector& o) const;
  SpinVector cross(const SpinVector& o) const;
};

SpinVector spin_vector(const ComplexMatrix& s);
ComplexMatrix spin_matrix(const SpinVector& v);

struct SpinSample {
  HermitianMatrix matrix;
  SpinVector vector;
  double norm_defect = 0.0;  // |‖S⃗‖ − 1|
};

struct LaxPair {
  ComplexMatrix g;  // I − (i/λ)S_n
  ComplexMatrix f;  // V⁺/(λ − i) + V⁻/(λ + i)
  ComplexMatrix v_plus, v_minus;
  ComplexMatrix h_plus, h_minus;
  double v_h_plus = 0.0;   // ‖V⁺ − H⁺‖_F
  double v_h_minus = 0.0;  // ‖V⁻ − H⁻‖_F
  Complex trace_v_plus, trace_v_minus, trace_h_plus, trace_h_minus;
  /// |Tr (I ± S_n)(I ± S_{n−1}) − 2(1 + S⃗_{n−1}·S⃗_n)|.
  double trace_product_plus = 0.0;
  double trace_product_minus = 0.0;
};

struct PositivityInterval {
  /// Last time found with Σ₀(t) positive definite and the first without, on
  /// each side of 0. `*_found` is false when no violation occurred up to the
  /// search limit, in which case the outside value is the limit.
  double lower_inside = 0.0, lower_outside = 0.0;
  double upper_inside = 0.0, upper_outside = 0.0;
  bool lower_found = false;
  bool upper_found = false;
};

struct MonodromyResidual {
  double step = 0.0;  // Ŵ_{n+1} − G_nŴ_n
  double time = 0.0;  // dŴ_n/dt − F_nŴ_n, central difference
};

/// The time-dependent family Λ₀(t), Σ₀(t) for a fixed α. Restricted to
/// m = 1 (2×2 spins).
class EvolutionState {
 public:
  /// Requires m = 1, the identity at t = 0, Σ₀(0) positive definite and
  /// 0, ±i ∉ σ(α). Method kAuto resolves to Sylvester when σ(α) lies strictly
  /// in the upper half plane and to the ODE otherwise.
  static EvolutionState create(const ParameterTriple& t0, int n_max = 10,
                               SigmaMethod method = SigmaMethod::kAuto,
                               const Tolerances& tol = {});

  const ParameterTriple& initial() const { return triple_; }
  const Tolerances& tolerances() const { return tol_; }
  int horizon() const { return n_max_; }
  SigmaMethod method() const { return method_; }

  /// [e^{−2t(α − i)⁻¹}θ₁, e^{−2t(α + i)⁻¹}θ₂].
  ComplexMatrix lambda0(double t) const;
  /// Right side of dΛ₀/dt.
  ComplexMatrix lambda0_rate(const ComplexMatrix& l) const;
  /// Right side of dΣ₀/dt.
  ComplexMatrix sigma0_rate(const ComplexMatrix& sigma, const ComplexMatrix& l) const;

  HermitianMatrix sigma0(double t) const { return sigma0(t, method_); }
  HermitianMatrix sigma0(double t, SigmaMethod method) const;
  /// Σ₀ at each of the sorted times; the ODE path integrates once through them.
  std::vector<HermitianMatrix> sigma0_trajectory(const std::vector<double>& times,
                                                 SigmaMethod method) const;

  ParameterTriple triple_at(double t) const;
  ParameterTriple triple_at(double t, const HermitianMatrix& sigma) const;
  std::shared_ptr<const LatticeState> lattice_at(double t, int horizon = -1) const;

  /// ‖αΣ₀(t) − Σ₀(t)α* − iΛ₀(t)Λ₀(t)*‖ over ‖α‖‖Σ₀‖ + ‖Λ₀‖².
  double identity_residual(double t, SigmaMethod method) const;
  /// Central-difference residual of the Λ₀ equation, relative to ‖Λ₀(t)‖.
  double lambda0_ode_residual(double t, double h = 1e-4) const;

  /// Marches outward from 0 in steps dt until min eig Σ₀(t) < 1e−10.
  PositivityInterval positivity_interval(double dt = 0.05, double limit = 5.0) const;

 private:
  EvolutionState() = default;

  HermitianMatrix integrate(double from, const HermitianMatrix& start, double to) const;

  ParameterTriple triple_;
  Tolerances tol_;
  int n_max_ = 0;
  SigmaMethod method_ = SigmaMethod::kSylvester;
  ComplexMatrix minus_;       // (α − i)⁻¹
  ComplexMatrix plus_;        // (α + i)⁻¹
  ComplexMatrix minus_adj_;   // (α* + i)⁻¹
  ComplexMatrix plus_adj_;    // (α* − i)⁻¹
  ComplexMatrix quad_;        // (α² + I)⁻¹
  ComplexMatrix quad_adj_;    // ((α*)² + I)⁻¹
};

/// S_n(t) and its spin vector. Throws Error(kDegeneracy) when S_n(t) is
/// within 1e−8 of ±I.
SpinSample spin_evolution(const EvolutionState& s, int n, double t);

/// Requires n ≥ 1 and |1 + S⃗_{n−1}·S⃗_n| > 1e−8.
LaxPair lax_pair(const EvolutionState& s, int n, double t, Complex lambda);

/// ‖(G_n(t+h) − G_n(t−h))/2h − (F_{n+1}G_n − G_nF_n)‖_F at (t, λ).
double zero_curvature_residual(const EvolutionState& s, int n, double t, Complex lambda,
                               double h = 1e-4);

/// ‖dS⃗_n/dt − 2S⃗_n ∧ (S⃗_{n+1}/(1 + S⃗_n·S⃗_{n+1}) + S⃗_{n−1}/(1 + S⃗_{n−1}·S⃗_n))‖
/// with the derivative by central difference. Requires n ≥ 1.
double ihm_residual(const EvolutionState& s, int n, double t, double h = 1e-4);
/// The right side of the IHM equation at site n.
SpinVector ihm_rate(const EvolutionState& s, int n, double t);

struct ConvergenceOrder {
  double coarse = 0.0;  // residual at h
  double fine = 0.0;    // residual at h/2
  double ratio = 0.0;
  double order = 0.0;   // log₂(ratio)
};

ConvergenceOrder convergence_order(const std::function<double(double)>& residual, double h);

/// φ(t, ·) from the time-t exponential factors and Σ₀(t), as the realization
/// (β̃(t), Σ₀(t)⁻¹e^{−2t(α − i)⁻¹}θ₁, e^{−2t(α + i)⁻¹}θ₂) with
/// β̃(t) = α − ie^{−2t(α + i)⁻¹}θ₂θ₂*e^{−2t(α* − i)⁻¹}Σ₀(t)⁻¹.
Realization weyl_evolution(const EvolutionState& s, double t);

/// Ŵ_n = λ^{−n}W_{α,Λ}(n, t, λ)·diag((λ − i)ⁿe^{2t/(λ − i)}, (λ + i)ⁿe^{2t/(λ + i)}).
ComplexMatrix monodromy(const EvolutionState& s, int n, double t, Complex lambda);
/// Requires n ≥ 1.
MonodromyResidual monodromy_residual(const EvolutionState& s, int n, double t, Complex lambda,
                                     double h = 1e-4);

}  // namespace spinlattice
