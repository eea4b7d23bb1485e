#include "spinlattice/random.h"

#include <cmath>

namespace spinlattice {

ComplexMatrix RandomSource::gaussian(int rows, int cols) {
  std::normal_distribution<double> d(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(d(engine_), d(engine_));
  }
  return g;
}

ComplexMatrix RandomSource::hermitian(int n) {
  const ComplexMatrix g = gaussian(n, n);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix RandomSource::unitary(int n) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(n, n));
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR();
  for (int k = 0; k < n; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0.0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

HermitianMatrix RandomSource::positive_definite(int n, double lo, double hi) {
  const ComplexMatrix u = unitary(n);
  Eigen::VectorXcd d(n);
  for (int k = 0; k < n; ++k) d(k) = uniform(lo, hi);
  return HermitianMatrix::symmetrized(u * d.asDiagonal() * u.adjoint());
}

ComplexMatrix RandomSource::well_conditioned(int n, double cond) {
  Eigen::VectorXcd d(n);
  for (int k = 0; k < n; ++k) d(k) = std::exp(uniform(0.0, std::log(cond)));
  if (n > 1) {
    d(0) = 1.0;
    d(n - 1) = cond;
  }
  return unitary(n) * d.asDiagonal() * unitary(n);
}

double RandomSource::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

Complex RandomSource::complex_uniform(double radius) {
  return std::polar(radius * std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * M_PI));
}

ParameterTriple RandomSource::fg_triple(int n, int m) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ComplexMatrix theta1 = gaussian(n, m);
    ComplexMatrix theta2 = gaussian(n, m);
    ComplexMatrix alpha =
        hermitian(n) + 0.5 * kI * (theta1 * theta1.adjoint() + theta2 * theta2.adjoint());
    double smallest = spectrum(alpha).distance_to(0.0);
    if (smallest < 2.0) {
      const double s = 2.0 / std::max(smallest, 1e-3);
      alpha *= s;
      theta1 *= std::sqrt(s);
      theta2 *= std::sqrt(s);
    }
    ParameterTriple t(alpha, theta1, theta2);
    const AdmissibilityReport r = validate(t);
    if (r.triple_class == TripleClass::kFG) return t;
  }
  throw Error(ErrorCode::kNumeric, "could not draw a full-range triple");
}

}  // namespace spinlattice
