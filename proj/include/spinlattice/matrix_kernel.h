#pragma once

#include <complex>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spinlattice/error.h"
#include "spinlattice/tolerances.h"

namespace spinlattice {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

ComplexMatrix identity(int n);

/// Throws Error(kNumeric) if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what);
void require_square(const ComplexMatrix& m, std::string_view what);

/// A square matrix that is Hermitian up to `Tolerances::hermitian`. The stored
/// matrix is always exactly symmetrized; the asymmetry of the input is kept.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  /// Checks the hermitian tolerance; throws Error(kPrecondition) on failure.
  static HermitianMatrix from(const ComplexMatrix& m, const Tolerances& tol = {});
  /// Symmetrizes without checking. Used for results of computations whose
  /// asymmetry is reported rather than rejected.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  static HermitianMatrix identity(int n);

  const ComplexMatrix& matrix() const { return m_; }
  int order() const { return static_cast<int>(m_.rows()); }
  /// ‖M − M*‖_F of the matrix this was built from.
  double asymmetry() const { return asymmetry_; }

  std::vector<double> eigenvalues() const;
  double min_eigenvalue() const;
  /// 2-norm condition number, |λ|_max / |λ|_min. Infinite if singular.
  double condition() const;
  bool is_positive_definite(const Tolerances& tol = {}) const;

 private:
  ComplexMatrix m_;
  double asymmetry_ = 0.0;
};

struct SpectrumReport {
  std::vector<Complex> eigenvalues;
  double min_imag_part = 0.0;
  bool contains_plus_i = false;
  bool contains_minus_i = false;
  bool contains_zero = false;

  /// Distance from z to the nearest eigenvalue (infinity for an empty spectrum).
  double distance_to(Complex z) const;
  Complex nearest(Complex z) const;
};

/// Eigenvalues of a general square matrix via the complex Schur form.
SpectrumReport spectrum(const ComplexMatrix& m, const Tolerances& tol = {});

/// Principal square root of a Hermitian positive definite matrix.
HermitianMatrix hermitian_sqrt(const HermitianMatrix& m, const Tolerances& tol = {});
HermitianMatrix hermitian_inverse_sqrt(const HermitianMatrix& m, const Tolerances& tol = {});

/// Solves AX − XB = C by reducing A and B to complex Schur form and
/// back-substituting column by column (Bartels–Stewart). Throws
/// Error(kSingular) when σ(A) and σ(B) meet within the spectrum tolerance.
ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c, const Tolerances& tol = {});

struct RangeReport {
  bool full_range = false;
  int rank = 0;
};

/// Rank of the block Krylov matrix [B, AB, ..., A^{N-1}B] counted from its
/// singular values; full range iff the rank equals N.
RangeReport is_full_range(const ComplexMatrix& a, const ComplexMatrix& b,
                          const Tolerances& tol = {});

/// Orthonormal basis (as columns) of span{A^k B}, built by block Arnoldi with
/// modified Gram–Schmidt and one re-orthogonalization pass. Candidates whose
/// orthogonal remainder falls below `rank` times their own norm are dropped.
ComplexMatrix krylov_basis(const ComplexMatrix& a, const ComplexMatrix& b,
                           const Tolerances& tol = {});

/// LU with partial pivoting plus a 1-norm condition estimate.
class LuFactor {
 public:
  LuFactor() = default;
  /// Throws Error(kSingular) for an exactly or numerically singular matrix.
  explicit LuFactor(const ComplexMatrix& m, std::string_view what = "matrix");

  ComplexMatrix solve(const ComplexMatrix& rhs) const;
  double condition() const { return condition_; }
  int order() const { return order_; }

 private:
  Eigen::PartialPivLU<ComplexMatrix> lu_;
  double condition_ = 1.0;
  int order_ = 0;
};

ComplexMatrix inverse(const ComplexMatrix& m, std::string_view what = "matrix");

/// Matrix exponential (scaling and squaring with a Padé approximant).
ComplexMatrix expm(const ComplexMatrix& m);

double largest_singular_value(const ComplexMatrix& m);
std::vector<double> singular_values(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);

}  // namespace spinlattice
