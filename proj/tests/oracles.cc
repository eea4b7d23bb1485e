#include "oracles.h"

#include <cmath>

namespace oracle {

using spinlattice::kI;

spinlattice::ParameterTriple Example::triple() const {
  ComplexMatrix a(1, 1), t1(1, 1), t2(1, 1);
  a(0, 0) = Complex(0.0, h);
  t1(0, 0) = theta1;
  t2(0, 0) = theta2;
  return {a, t1, t2};
}

double Example::c(int n) const {
  return std::pow(h + 1.0, 2 * n) * std::norm(theta1) + std::pow(h - 1.0, 2 * n) * std::norm(theta2);
}

double Example::sigma(int n) const { return c(n) / (2.0 * std::pow(h, 2 * n + 1)); }

Complex Example::lambda1(int n, double t) const {
  return std::pow((h + 1.0) / h, n) * theta1 * std::exp(Complex(0.0, 2.0 * t / (h - 1.0)));
}

Complex Example::lambda2(int n, double t) const {
  return std::pow((h - 1.0) / h, n) * theta2 * std::exp(Complex(0.0, 2.0 * t / (h + 1.0)));
}

double Example::s11(int n) const {
  return 1.0 - 8.0 * h * h * std::norm(theta1 * theta2) * std::pow(h * h - 1.0, 2 * n) /
                   (c(n) * c(n + 1));
}

Complex Example::s12(int n, double t) const {
  const double amp = 4.0 * h / (c(n) * c(n + 1)) * std::pow(h * h - 1.0, n) *
                     (std::pow(h + 1.0, 2 * n + 1) * std::norm(theta1) -
                      std::pow(h - 1.0, 2 * n + 1) * std::norm(theta2));
  return amp * std::conj(theta1) * theta2 * std::exp(Complex(0.0, 4.0 * t / (1.0 - h * h)));
}

Complex Example::phi(double t, Complex lambda) const {
  return std::exp(Complex(0.0, 4.0 * t / (1.0 - h * h))) * kI * std::conj(theta1) * theta2 /
         (lambda + kI * (std::norm(theta2) - h));
}

ComplexMatrix sigma_by_quadrature(const ComplexMatrix& alpha, const ComplexMatrix& lambda_n,
                                  int panels) {
  const auto n = alpha.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  const double du = M_PI / panels;
  // Endpoint values vanish (integrand times sec²u is O(1) there but the
  // resolvent decays as cos²u), so the open midpoint sum is the trapezoid sum.
  for (int k = 0; k < panels; ++k) {
    const double u = -M_PI / 2 + (k + 0.5) * du;
    const double x = std::tan(u);
    const double jac = 1.0 / (std::cos(u) * std::cos(u));
    const ComplexMatrix r = (alpha - x * id).inverse() * lambda_n;
    sum += jac * (r * r.adjoint());
  }
  return sum * du / (2.0 * M_PI);
}

std::vector<ComplexMatrix> naive_spins(const spinlattice::ParameterTriple& t, int count) {
  const int m = t.m();
  ComplexMatrix j = ComplexMatrix::Identity(2 * m, 2 * m);
  j.bottomRightCorner(m, m) *= -1.0;
  const ComplexMatrix ai = t.alpha().inverse();
  std::vector<ComplexMatrix> lam{t.lambda0()};
  std::vector<ComplexMatrix> sig{t.sigma0().matrix()};
  for (int k = 0; k < count; ++k) {
    const ComplexMatrix l = lam.back();
    const ComplexMatrix s = sig.back();
    lam.push_back(l + kI * ai * l * j);
    sig.push_back(s + ai * s * ai.adjoint() + ai * l * j * l.adjoint() * ai.adjoint());
  }
  std::vector<ComplexMatrix> spins;
  for (int k = 0; k < count; ++k) {
    spins.push_back(j + lam[k].adjoint() * sig[k].inverse() * lam[k] -
                    lam[k + 1].adjoint() * sig[k + 1].inverse() * lam[k + 1]);
  }
  return spins;
}

ComplexMatrix product_fundamental(const std::vector<ComplexMatrix>& spins, int n, Complex lambda) {
  const auto d = spins.front().rows();
  ComplexMatrix w = ComplexMatrix::Identity(d, d);
  for (int k = 0; k < n; ++k) w = (ComplexMatrix::Identity(d, d) - (kI / lambda) * spins[k]) * w;
  return w;
}

double scalar_riccati(Complex gamma, Complex a, Complex b) {
  // γx − xγ̄ = 2i·Im γ·x, so 2 Im γ·x = |a|²x² − |b|².
  const double c = gamma.imag();
  const double a2 = std::norm(a);
  const double b2 = std::norm(b);
  return (c + std::sqrt(c * c + a2 * b2)) / a2;
}

namespace {

spinlattice::ParameterTriple pad_with(spinlattice::RandomSource& rng,
                                      const spinlattice::ParameterTriple& core, int pad,
                                      bool hide_from_theta2) {
  const int n = core.order();
  const int m = core.m();
  const int total = n + pad;
  const ComplexMatrix kappa = rng.gaussian(pad, m);
  const ComplexMatrix& visible = hide_from_theta2 ? core.theta1() : core.theta2();
  ComplexMatrix a = ComplexMatrix::Zero(total, total);
  a.topLeftCorner(n, n) = core.alpha();
  a.topRightCorner(n, pad) = kI * visible * kappa.adjoint();
  const ComplexMatrix h = rng.hermitian(pad);
  a.bottomRightCorner(pad, pad) = h + 0.5 * kI * kappa * kappa.adjoint();
  // Keep the hidden block away from 0 and i.
  a.bottomRightCorner(pad, pad) += 3.0 * ComplexMatrix::Identity(pad, pad);
  ComplexMatrix wide_visible(total, m), wide_hidden = ComplexMatrix::Zero(total, m);
  wide_visible << visible, kappa;
  wide_hidden.topRows(n) = hide_from_theta2 ? core.theta2() : core.theta1();
  const ComplexMatrix u = rng.unitary(total);
  const ComplexMatrix alpha = u * a * u.adjoint();
  if (hide_from_theta2) return {alpha, u * wide_visible, u * wide_hidden};
  return {alpha, u * wide_hidden, u * wide_visible};
}

}  // namespace

spinlattice::ParameterTriple padded_triple(spinlattice::RandomSource& rng,
                                           const spinlattice::ParameterTriple& core, int pad) {
  return pad_with(rng, core, pad, true);
}

spinlattice::ParameterTriple padded_triple_theta1(spinlattice::RandomSource& rng,
                                                  const spinlattice::ParameterTriple& core, int pad) {
  return pad_with(rng, core, pad, false);
}

spinlattice::Realization random_minimal_realization(spinlattice::RandomSource& rng, int n, int m) {
  for (;;) {
    spinlattice::Realization r(rng.gaussian(n, n), rng.gaussian(n, m), rng.gaussian(n, m));
    if (spinlattice::is_full_range(r.gamma(), r.vartheta2()).full_range &&
        spinlattice::is_full_range(r.gamma().adjoint(), r.vartheta1()).full_range) {
      return r;
    }
  }
}

spinlattice::Realization padded_realization(spinlattice::RandomSource& rng,
                                            const spinlattice::Realization& core, int pad) {
  const int n = core.order();
  const int m = core.m();
  const int total = n + pad;
  ComplexMatrix g = ComplexMatrix::Zero(total, total);
  g.topLeftCorner(n, n) = core.gamma();
  g.topRightCorner(n, pad) = rng.gaussian(n, pad);
  g.bottomRightCorner(pad, pad) = rng.gaussian(pad, pad);
  ComplexMatrix v1(total, m), v2 = ComplexMatrix::Zero(total, m);
  v1 << core.vartheta1(), rng.gaussian(pad, m);
  v2.topRows(n) = core.vartheta2();
  return spinlattice::Realization(g, v1, v2).similarity(rng.well_conditioned(total, 5.0));
}

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
