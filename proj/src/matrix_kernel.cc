#include "spinlattice/matrix_kernel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace spinlattice {

namespace {

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimension: return "dimension error";
    case ErrorCode::kNumeric: return "numeric error";
    case ErrorCode::kNotPositiveDefinite: return "not positive definite";
    case ErrorCode::kSingular: return "singular matrix";
    case ErrorCode::kSpectrum: return "spectrum error";
    case ErrorCode::kPole: return "pole error";
    case ErrorCode::kConditioning: return "conditioning error";
    case ErrorCode::kAdmissibility: return "admissibility error";
    case ErrorCode::kDegeneracy: return "degeneracy error";
    case ErrorCode::kPrecondition: return "precondition error";
    case ErrorCode::kOverflow: return "overflow";
    case ErrorCode::kInconsistent: return "internal inconsistency";
    case ErrorCode::kParse: return "parse error";
  }
  return "error";
}

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNumeric, std::string(what) + " has non-finite entries");
  }
}

void require_square(const ComplexMatrix& m, std::string_view what) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::kDimension,
                std::string(what) + " must be square, got " + std::to_string(m.rows()) +
                    "x" + std::to_string(m.cols()));
  }
}

// ---------------------------------------------------------------------------

HermitianMatrix HermitianMatrix::from(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "hermitian matrix");
  require_finite(m, "hermitian matrix");
  HermitianMatrix h = symmetrized(m);
  if (h.asymmetry_ > tol.hermitian * std::max(1.0, m.norm())) {
    throw Error(ErrorCode::kPrecondition,
                "matrix is not Hermitian: ‖M − M*‖ = " + std::to_string(h.asymmetry_));
  }
  return h;
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  require_square(m, "hermitian matrix");
  HermitianMatrix h;
  h.asymmetry_ = (m - m.adjoint()).norm();
  h.m_ = 0.5 * (m + m.adjoint());
  return h;
}

HermitianMatrix HermitianMatrix::identity(int n) {
  HermitianMatrix h;
  h.m_ = ComplexMatrix::Identity(n, n);
  return h;
}

std::vector<double> HermitianMatrix::eigenvalues() const {
  if (m_.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumeric, "Hermitian eigensolver did not converge");
  }
  const auto& v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

double HermitianMatrix::min_eigenvalue() const {
  const auto ev = eigenvalues();
  return ev.empty() ? std::numeric_limits<double>::infinity() : ev.front();
}

double HermitianMatrix::condition() const {
  const auto ev = eigenvalues();
  if (ev.empty()) return 1.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (double x : ev) {
    lo = std::min(lo, std::abs(x));
    hi = std::max(hi, std::abs(x));
  }
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

bool HermitianMatrix::is_positive_definite(const Tolerances& tol) const {
  return order() == 0 || min_eigenvalue() > tol.posdef;
}

// ---------------------------------------------------------------------------

double SpectrumReport::distance_to(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : eigenvalues) d = std::min(d, std::abs(e - z));
  return d;
}

Complex SpectrumReport::nearest(Complex z) const {
  Complex best = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : eigenvalues) {
    if (std::abs(e - z) < d) {
      d = std::abs(e - z);
      best = e;
    }
  }
  return best;
}

SpectrumReport spectrum(const ComplexMatrix& m, const Tolerances& tol) {
  require_square(m, "spectrum input");
  require_finite(m, "spectrum input");
  SpectrumReport report;
  const auto n = m.rows();
  if (n == 0) {
    report.min_imag_part = std::numeric_limits<double>::infinity();
    return report;
  }
  const bool hermitian = (m - m.adjoint()).norm() <= tol.hermitian * std::max(1.0, m.norm());
  if (hermitian) {
    for (double x : HermitianMatrix::symmetrized(m).eigenvalues()) report.eigenvalues.emplace_back(x, 0.0);
  } else {
    Eigen::ComplexSchur<ComplexMatrix> schur(m.rows());
    schur.compute(m, /*computeU=*/false);
    if (schur.info() != Eigen::Success) {
      throw Error(ErrorCode::kNumeric, "complex Schur iteration did not converge after " +
                                           std::to_string(schur.getMaxIterations()) +
                                           " iterations");
    }
    const ComplexMatrix& t = schur.matrixT();
    for (Eigen::Index k = 0; k < n; ++k) report.eigenvalues.push_back(t(k, k));
  }
  report.min_imag_part = std::numeric_limits<double>::infinity();
  for (const auto& e : report.eigenvalues) {
    report.min_imag_part = std::min(report.min_imag_part, e.imag());
    report.contains_plus_i |= std::abs(e - kI) <= tol.spectrum;
    report.contains_minus_i |= std::abs(e + kI) <= tol.spectrum;
    report.contains_zero |= std::abs(e) <= tol.spectrum;
  }
  return report;
}

namespace {

HermitianMatrix spectral_power(const HermitianMatrix& m, double power, const Tolerances& tol) {
  if (m.order() == 0) return m;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix());
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumeric, "Hermitian eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() <= tol.posdef) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "minimum eigenvalue " + std::to_string(ev.minCoeff()));
  }
  const Eigen::VectorXd scaled = ev.array().pow(power);
  const ComplexMatrix& v = es.eigenvectors();
  return HermitianMatrix::symmetrized(v * scaled.cast<Complex>().asDiagonal() * v.adjoint());
}

}  // namespace

HermitianMatrix hermitian_sqrt(const HermitianMatrix& m, const Tolerances& tol) {
  return spectral_power(m, 0.5, tol);
}

HermitianMatrix hermitian_inverse_sqrt(const HermitianMatrix& m, const Tolerances& tol) {
  return spectral_power(m, -0.5, tol);
}

// ---------------------------------------------------------------------------

ComplexMatrix solve_sylvester(const ComplexMatrix& a, const ComplexMatrix& b,
                              const ComplexMatrix& c, const Tolerances& tol) {
  require_square(a, "Sylvester A");
  require_square(b, "Sylvester B");
  if (c.rows() != a.rows() || c.cols() != b.rows()) {
    throw Error(ErrorCode::kDimension, "Sylvester right-hand side is " +
                                           std::to_string(c.rows()) + "x" +
                                           std::to_string(c.cols()));
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index k = b.rows();
  if (n == 0 || k == 0) return ComplexMatrix::Zero(n, k);

  Eigen::ComplexSchur<ComplexMatrix> sa(a);
  Eigen::ComplexSchur<ComplexMatrix> sb(b);
  if (sa.info() != Eigen::Success || sb.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumeric, "complex Schur iteration did not converge");
  }
  const ComplexMatrix& ta = sa.matrixT();
  const ComplexMatrix& tb = sb.matrixT();
  const ComplexMatrix& ua = sa.matrixU();
  const ComplexMatrix& ub = sb.matrixU();

  const double gap_tol = tol.spectrum * std::max(1.0, a.norm() + b.norm());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (std::abs(ta(i, i) - tb(j, j)) <= gap_tol) {
        throw Error(ErrorCode::kSingular, "spectra of A and B overlap near " + describe(ta(i, i)));
      }
    }
  }

  // T_A Y − Y T_B = F with F = U_A* C U_B; columns of Y in increasing order.
  const ComplexMatrix f = ua.adjoint() * c * ub;
  ComplexMatrix y = ComplexMatrix::Zero(n, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    ComplexVector rhs = f.col(j);
    for (Eigen::Index l = 0; l < j; ++l) rhs += y.col(l) * tb(l, j);
    ComplexMatrix shifted = ta;
    shifted.diagonal().array() -= tb(j, j);
    y.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return ua * y * ub.adjoint();
}

// ---------------------------------------------------------------------------

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

double largest_singular_value(const ComplexMatrix& m) {
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

double spectral_norm(const ComplexMatrix& m) { return largest_singular_value(m); }

RangeReport is_full_range(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  require_square(a, "full-range A");
  if (b.rows() != a.rows()) {
    throw Error(ErrorCode::kDimension, "full-range B must have " + std::to_string(a.rows()) + " rows");
  }
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  if (n == 0) return {true, 0};
  if (m == 0) return {false, 0};
  ComplexMatrix krylov(n, n * m);
  krylov.leftCols(m) = b;
  for (Eigen::Index k = 1; k < n; ++k) {
    krylov.middleCols(k * m, m) = a * krylov.middleCols((k - 1) * m, m);
  }
  const auto s = singular_values(krylov);
  RangeReport report;
  if (s.front() == 0.0) return report;
  for (double x : s) {
    if (x > tol.rank * s.front()) ++report.rank;
  }
  report.full_range = report.rank == n;
  return report;
}

ComplexMatrix krylov_basis(const ComplexMatrix& a, const ComplexMatrix& b, const Tolerances& tol) {
  require_square(a, "Krylov A");
  if (b.rows() != a.rows()) {
    throw Error(ErrorCode::kDimension, "Krylov B must have " + std::to_string(a.rows()) + " rows");
  }
  const Eigen::Index n = a.rows();
  std::vector<ComplexVector> basis;

  auto try_add = [&](ComplexVector v, double reference) {
    if (reference == 0.0 || static_cast<Eigen::Index>(basis.size()) == n) return;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) v -= q * q.dot(v);
    }
    const double remainder = v.norm();
    if (remainder > tol.rank * reference) basis.push_back(v / remainder);
  };

  double column_scale = 0.0;
  for (Eigen::Index j = 0; j < b.cols(); ++j) column_scale = std::max(column_scale, b.col(j).norm());
  for (Eigen::Index j = 0; j < b.cols(); ++j) try_add(b.col(j), column_scale);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    ComplexVector candidate = a * basis[j];
    const double reference = candidate.norm();
    try_add(std::move(candidate), reference);
  }

  ComplexMatrix q(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) q.col(static_cast<Eigen::Index>(j)) = basis[j];
  return q;
}

// ---------------------------------------------------------------------------

LuFactor::LuFactor(const ComplexMatrix& m, std::string_view what) : order_(static_cast<int>(m.rows())) {
  require_square(m, what);
  if (order_ == 0) return;
  lu_.compute(m);
  const double rcond = lu_.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorCode::kSingular, std::string(what) + " is singular (rcond " +
                                          std::to_string(rcond) + ")");
  }
  condition_ = 1.0 / rcond;
}

ComplexMatrix LuFactor::solve(const ComplexMatrix& rhs) const {
  if (order_ == 0) return ComplexMatrix::Zero(0, rhs.cols());
  return lu_.solve(rhs);
}

ComplexMatrix inverse(const ComplexMatrix& m, std::string_view what) {
  return LuFactor(m, what).solve(identity(static_cast<int>(m.rows())));
}

ComplexMatrix expm(const ComplexMatrix& m) {
  require_square(m, "exponential argument");
  if (m.rows() == 0) return m;
  return m.exp();
}

}  // namespace spinlattice
