#pragma once

#include <string_view>
#include <vector>

namespace spinlattice {

/// Numeric slack used by the checks and solvers. Defaults are the library's
/// contract values; the CLI overrides them by name (`--tol rank=1e-9`).
struct Tolerances {
  double hermitian = 1e-12;    // ‖M − M*‖_F ≤ hermitian · max(1, ‖M‖_F)
  double spectrum = 1e-10;     // eigenvalue coincidence (±i, 0, spectra overlap)
  double posdef = 1e-12;       // minimum eigenvalue for positive definiteness
  double rank = 1e-10;         // singular values below rank · σ_max are zero
  double identity = 1e-10;     // relative residual of αΣ − Σα* = iΛΛ*
  double spin = 1e-11;         // involution residual per unit conditioning
  double pole = 1e-10;         // distance to σ(α), relative to max(1, ‖α‖)
  double condition_max = 1e12; // largest condition number accepted for a solve
  double sigma_overflow = 1e14;// abort the recursion once ‖Σ_n‖ exceeds this

  /// Sets the named tolerance. Throws Error(kPrecondition) for an unknown
  /// name or a non-positive value.
  void set(std::string_view name, double value);
  double get(std::string_view name) const;

  static std::vector<std::string_view> names();
};

}  // namespace spinlattice
