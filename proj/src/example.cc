#include "spinlattice/example.h"

#include <cmath>

namespace spinlattice {

ScalarExample::ScalarExample(double h) : ScalarExample(h, std::sqrt(h), std::sqrt(h)) {}

ScalarExample::ScalarExample(double h, Complex theta1, Complex theta2)
    : h_(h), theta1_(theta1), theta2_(theta2) {
  if (!(h > 1.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::kPrecondition, "the example needs h > 1");
  }
  const double norm = std::norm(theta1) + std::norm(theta2);
  if (std::abs(norm - 2.0 * h) > 1e-12 * h) {
    throw Error(ErrorCode::kPrecondition, "the example needs |θ₁|² + |θ₂|² = 2h");
  }
}

ParameterTriple ScalarExample::triple() const {
  ComplexMatrix a(1, 1), t1(1, 1), t2(1, 1);
  a(0, 0) = Complex(0.0, h_);
  t1(0, 0) = theta1_;
  t2(0, 0) = theta2_;
  return {a, t1, t2};
}

double ScalarExample::c(int n) const {
  return std::pow(h_ + 1.0, 2 * n) * std::norm(theta1_) +
         std::pow(h_ - 1.0, 2 * n) * std::norm(theta2_);
}

double ScalarExample::sigma(int n) const { return c(n) / (2.0 * std::pow(h_, 2 * n + 1)); }

ComplexMatrix ScalarExample::lambda(int n, double t) const {
  ComplexMatrix l(1, 2);
  l(0, 0) = std::pow((h_ + 1.0) / h_, n) * theta1_ * std::exp(Complex(0.0, 2.0 * t / (h_ - 1.0)));
  l(0, 1) = std::pow((h_ - 1.0) / h_, n) * theta2_ * std::exp(Complex(0.0, 2.0 * t / (h_ + 1.0)));
  return l;
}

ComplexMatrix ScalarExample::spin(int n, double t) const {
  const double cc = c(n) * c(n + 1);
  const double d = 1.0 - 8.0 * h_ * h_ * std::norm(theta1_ * theta2_) *
                             std::pow(h_ * h_ - 1.0, 2 * n) / cc;
  const double amp = 4.0 * h_ / cc * std::pow(h_ * h_ - 1.0, n) *
                     (std::pow(h_ + 1.0, 2 * n + 1) * std::norm(theta1_) -
                      std::pow(h_ - 1.0, 2 * n + 1) * std::norm(theta2_));
  const Complex off = amp * std::conj(theta1_) * theta2_ *
                      std::exp(Complex(0.0, 4.0 * t / (1.0 - h_ * h_)));
  ComplexMatrix s(2, 2);
  s << d, off, std::conj(off), -d;
  return s;
}

Complex ScalarExample::phi(double t, Complex lambda) const {
  return std::exp(Complex(0.0, 4.0 * t / (1.0 - h_ * h_))) * kI * std::conj(theta1_) * theta2_ /
         (lambda + kI * (std::norm(theta2_) - h_));
}

}  // namespace spinlattice
