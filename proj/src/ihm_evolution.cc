#include "spinlattice/ihm_evolution.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinlattice {

std::string_view to_string(SigmaMethod m) {
  switch (m) {
    case SigmaMethod::kAuto: return "auto";
    case SigmaMethod::kSylvester: return "sylvester";
    case SigmaMethod::kOde: return "ode";
  }
  return "auto";
}

double SpinVector::norm() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }

double SpinVector::dot(const SpinVector& o) const { return s1 * o.s1 + s2 * o.s2 + s3 * o.s3; }

SpinVector SpinVector::cross(const SpinVector& o) const {
  return {s2 * o.s3 - s3 * o.s2, s3 * o.s1 - s1 * o.s3, s1 * o.s2 - s2 * o.s1};
}

SpinVector spin_vector(const ComplexMatrix& s) {
  if (s.rows() != 2 || s.cols() != 2) {
    throw Error(ErrorCode::kDimension, "spin vectors need a 2×2 spin matrix");
  }
  return {s(1, 0).real(), s(1, 0).imag(), s(0, 0).real()};
}

ComplexMatrix spin_matrix(const SpinVector& v) {
  ComplexMatrix s(2, 2);
  s << v.s3, Complex(v.s1, -v.s2), Complex(v.s1, v.s2), -v.s3;
  return s;
}

// ---------------------------------------------------------------------------

EvolutionState EvolutionState::create(const ParameterTriple& t0, int n_max, SigmaMethod method,
                                      const Tolerances& tol) {
  if (t0.m() != 1) {
    throw Error(ErrorCode::kPrecondition,
                "IHM evolution needs 2×2 spins (m = 1), got m = " + std::to_string(t0.m()));
  }
  if (n_max < 1) throw Error(ErrorCode::kPrecondition, "horizon must be at least 1");
  if (!t0.sigma0().is_positive_definite(tol)) {
    throw Error(ErrorCode::kNotPositiveDefinite, "Σ₀(0) must be positive definite");
  }
  if (t0.identity_residual() > tol.identity * std::max(1.0, t0.identity_scale())) {
    throw Error(ErrorCode::kPrecondition, "the identity αΣ₀ − Σ₀α* = iΛ₀Λ₀* fails at t = 0");
  }
  const SpectrumReport spec = spectrum(t0.alpha(), tol);
  if (spec.contains_zero || spec.contains_plus_i || spec.contains_minus_i) {
    throw Error(ErrorCode::kSpectrum, "IHM evolution needs 0, ±i outside σ(α)");
  }
  EvolutionState s;
  s.triple_ = t0;
  s.tol_ = tol;
  s.n_max_ = n_max;
  const int n = t0.order();
  const ComplexMatrix& a = t0.alpha();
  s.minus_ = inverse(a - kI * identity(n), "α − i");
  s.plus_ = inverse(a + kI * identity(n), "α + i");
  s.minus_adj_ = s.minus_.adjoint();
  s.plus_adj_ = s.plus_.adjoint();
  s.quad_ = inverse(a * a + identity(n), "α² + I");
  s.quad_adj_ = s.quad_.adjoint();
  const bool separated = spec.min_imag_part > tol.spectrum;
  if (method == SigmaMethod::kAuto) {
    s.method_ = separated ? SigmaMethod::kSylvester : SigmaMethod::kOde;
  } else {
    if (method == SigmaMethod::kSylvester && !separated) {
      throw Error(ErrorCode::kSpectrum, "the Sylvester path needs σ(α) in the open upper half plane");
    }
    s.method_ = method;
  }
  return s;
}

ComplexMatrix EvolutionState::lambda0(double t) const {
  ComplexMatrix l(triple_.order(), 2);
  l.col(0) = expm(-2.0 * t * minus_) * triple_.theta1();
  l.col(1) = expm(-2.0 * t * plus_) * triple_.theta2();
  return l;
}

ComplexMatrix EvolutionState::lambda0_rate(const ComplexMatrix& l) const {
  ComplexMatrix r(l.rows(), 2);
  r.col(0) = -2.0 * minus_ * l.col(0);
  r.col(1) = -2.0 * plus_ * l.col(1);
  return r;
}

ComplexMatrix EvolutionState::sigma0_rate(const ComplexMatrix& sigma, const ComplexMatrix& l) const {
  const ComplexMatrix& a = triple_.alpha();
  ComplexMatrix ljl = l.col(0) * l.col(0).adjoint() - l.col(1) * l.col(1).adjoint();
  return -(minus_ * sigma + plus_ * sigma + sigma * minus_adj_ + sigma * plus_adj_ +
           2.0 * quad_ * (a * ljl + ljl * a.adjoint()) * quad_adj_);
}

HermitianMatrix EvolutionState::integrate(double from, const HermitianMatrix& start, double to) const {
  constexpr double kMaxStep = 1e-3;
  constexpr double kMinStep = 1e-12;
  ComplexMatrix y = start.matrix();
  double t = from;
  const double dir = to >= from ? 1.0 : -1.0;
  double h = kMaxStep;
  auto rk4 = [this](double t0, const ComplexMatrix& y0, double dt) {
    auto f = [this](double tt, const ComplexMatrix& yy) { return sigma0_rate(yy, lambda0(tt)); };
    const ComplexMatrix k1 = f(t0, y0);
    const ComplexMatrix k2 = f(t0 + dt / 2, y0 + dt / 2 * k1);
    const ComplexMatrix k3 = f(t0 + dt / 2, y0 + dt / 2 * k2);
    const ComplexMatrix k4 = f(t0 + dt, y0 + dt * k3);
    return ComplexMatrix(y0 + dt / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };
  while (dir * (to - t) > 0.0) {
    const double step = std::min(h, dir * (to - t));
    const ComplexMatrix full = rk4(t, y, dir * step);
    const ComplexMatrix half = rk4(t + dir * step / 2, rk4(t, y, dir * step / 2), dir * step / 2);
    const double err = (full - half).norm() / 15.0;
    if (err <= 1e-13 * std::max(1.0, y.norm())) {
      y = half + (half - full) / 15.0;
      y = 0.5 * (y + y.adjoint());
      t += dir * step;
      if (!y.allFinite()) throw Error(ErrorCode::kNumeric, "Σ₀(t) integration diverged");
      h = std::min(kMaxStep, 2.0 * step);
    } else {
      h = step / 2;
      if (h < kMinStep) {
        std::ostringstream os;
        os << "RK4 step size underflow at t = " << t;
        throw Error(ErrorCode::kNumeric, os.str());
      }
    }
  }
  return HermitianMatrix::symmetrized(y);
}

HermitianMatrix EvolutionState::sigma0(double t, SigmaMethod method) const {
  if (method == SigmaMethod::kAuto) method = method_;
  if (t == 0.0) return triple_.sigma0();
  if (method == SigmaMethod::kSylvester) {
    const ComplexMatrix l = lambda0(t);
    return HermitianMatrix::symmetrized(
        solve_sylvester(triple_.alpha(), triple_.alpha().adjoint(), kI * l * l.adjoint(), tol_));
  }
  return integrate(0.0, triple_.sigma0(), t);
}

std::vector<HermitianMatrix> EvolutionState::sigma0_trajectory(const std::vector<double>& times,
                                                               SigmaMethod method) const {
  if (method == SigmaMethod::kAuto) method = method_;
  std::vector<HermitianMatrix> out(times.size());
  if (method == SigmaMethod::kSylvester) {
    for (std::size_t k = 0; k < times.size(); ++k) out[k] = sigma0(times[k], method);
    return out;
  }
  // Integrate outward from 0 on each side so the error does not accumulate
  // across the origin.
  std::vector<std::size_t> order(times.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(times[a]) < std::abs(times[b]);
  });
  double pos_t = 0.0, neg_t = 0.0;
  HermitianMatrix pos = triple_.sigma0(), neg = triple_.sigma0();
  for (std::size_t k : order) {
    const double t = times[k];
    if (t >= 0.0) {
      pos = integrate(pos_t, pos, t);
      pos_t = t;
      out[k] = pos;
    } else {
      neg = integrate(neg_t, neg, t);
      neg_t = t;
      out[k] = neg;
    }
  }
  return out;
}

ParameterTriple EvolutionState::triple_at(double t) const { return triple_at(t, sigma0(t)); }

ParameterTriple EvolutionState::triple_at(double t, const HermitianMatrix& sigma) const {
  const ComplexMatrix l = lambda0(t);
  return ParameterTriple(triple_.alpha(), l.col(0), l.col(1), sigma);
}

std::shared_ptr<const LatticeState> EvolutionState::lattice_at(double t, int horizon) const {
  return std::make_shared<const LatticeState>(
      LatticeState::generate(triple_at(t), horizon < 0 ? n_max_ : horizon, tol_));
}

double EvolutionState::identity_residual(double t, SigmaMethod method) const {
  const ParameterTriple tt = triple_at(t, sigma0(t, method));
  return tt.identity_residual() / std::max(1.0, tt.identity_scale());
}

double EvolutionState::lambda0_ode_residual(double t, double h) const {
  const ComplexMatrix diff = (lambda0(t + h) - lambda0(t - h)) / (2.0 * h);
  const ComplexMatrix l = lambda0(t);
  return (diff - lambda0_rate(l)).norm() / std::max(1.0, l.norm());
}

PositivityInterval EvolutionState::positivity_interval(double dt, double limit) const {
  if (!(dt > 0.0) || !(limit > 0.0)) {
    throw Error(ErrorCode::kPrecondition, "positivity search needs positive dt and limit");
  }
  PositivityInterval p;
  for (double dir : {1.0, -1.0}) {
    double inside = 0.0;
    double outside = dir * limit;
    bool found = false;
    HermitianMatrix sigma = triple_.sigma0();
    double t = 0.0;
    while (std::abs(t) < limit) {
      const double next = t + dir * dt;
      try {
        sigma = method_ == SigmaMethod::kSylvester ? sigma0(next) : integrate(t, sigma, next);
      } catch (const Error&) {
        outside = next;
        found = true;
        break;
      }
      if (!(sigma.min_eigenvalue() > 1e-10)) {
        outside = next;
        found = true;
        break;
      }
      inside = next;
      t = next;
    }
    if (dir > 0) {
      p.upper_inside = inside;
      p.upper_outside = outside;
      p.upper_found = found;
    } else {
      p.lower_inside = inside;
      p.lower_outside = outside;
      p.lower_found = found;
    }
  }
  return p;
}

// ---------------------------------------------------------------------------

namespace {

SpinSample sample(const LatticeState& lattice, int n) {
  const HermitianMatrix& s = lattice.spin(n);
  const ComplexMatrix& m = s.matrix();
  if ((m - identity(2)).norm() <= 1e-8 || (m + identity(2)).norm() <= 1e-8) {
    throw Error(ErrorCode::kDegeneracy, "S_" + std::to_string(n) + " is ±I");
  }
  SpinSample out{s, spin_vector(m), 0.0};
  out.norm_defect = std::abs(out.vector.norm() - 1.0);
  if (out.norm_defect > 1e-6) {
    throw Error(ErrorCode::kNumeric, "spin vector at n = " + std::to_string(n) +
                                         " has norm defect " + std::to_string(out.norm_defect));
  }
  return out;
}

double denominator(const SpinVector& a, const SpinVector& b, int n) {
  const double d = 1.0 + a.dot(b);
  if (std::abs(d) <= 1e-8) {
    throw Error(ErrorCode::kDegeneracy,
                "1 + S⃗·S⃗ vanishes between sites " + std::to_string(n - 1) + " and " + std::to_string(n));
  }
  return d;
}

void require_site(int n) {
  if (n < 1) {
    throw Error(ErrorCode::kPrecondition, "site n = " + std::to_string(n) + " has no left neighbour");
  }
}

// V_r^± from S_{r−1}, S_r.
std::pair<ComplexMatrix, ComplexMatrix> v_pair(const SpinSample& prev, const SpinSample& cur, int r) {
  const double d = denominator(prev.vector, cur.vector, r);
  const ComplexMatrix i2 = identity(2);
  const ComplexMatrix& s = cur.matrix.matrix();
  const ComplexMatrix& sp = prev.matrix.matrix();
  return {(i2 + s) * (i2 + sp) / d, (i2 - s) * (i2 - sp) / d};
}

ComplexMatrix f_matrix(const SpinSample& prev, const SpinSample& cur, int r, Complex lambda) {
  const auto [vp, vm] = v_pair(prev, cur, r);
  return vp / (lambda - kI) + vm / (lambda + kI);
}

ComplexMatrix g_matrix(const SpinSample& s, Complex lambda) {
  return identity(2) - (kI / lambda) * s.matrix.matrix();
}

void require_lambda(const EvolutionState& s, Complex lambda) {
  const double r = s.tolerances().pole * std::max(1.0, s.initial().alpha().norm());
  if (std::abs(lambda) <= r || std::abs(lambda - kI) <= r || std::abs(lambda + kI) <= r) {
    throw Error(ErrorCode::kPole, "λ must avoid 0 and ±i");
  }
  if (spectrum(s.initial().alpha(), s.tolerances()).distance_to(lambda) <= r) {
    throw Error(ErrorCode::kPole, "λ is on the spectrum of alpha");
  }
}

}  // namespace

SpinSample spin_evolution(const EvolutionState& s, int n, double t) {
  if (n < 0) throw Error(ErrorCode::kPrecondition, "n must be non-negative");
  return sample(*s.lattice_at(t, n + 1), n);
}

LaxPair lax_pair(const EvolutionState& s, int n, double t, Complex lambda) {
  require_site(n);
  require_lambda(s, lambda);
  auto lattice = s.lattice_at(t, n + 1);
  const SpinSample prev = sample(*lattice, n - 1);
  const SpinSample cur = sample(*lattice, n);
  const TransferFunction w(lattice);
  const SignatureMatrix& sig = lattice->signature();

  LaxPair lp;
  std::tie(lp.v_plus, lp.v_minus) = v_pair(prev, cur, n);
  lp.g = g_matrix(cur, lambda);
  lp.f = lp.v_plus / (lambda - kI) + lp.v_minus / (lambda + kI);
  const ComplexMatrix w_plus = w.w_alpha_lambda(n, kI);
  const ComplexMatrix w_minus = w.w_alpha_lambda(n, -kI);
  lp.h_plus = 2.0 * w_plus * sig.p_plus * w_minus.adjoint();
  lp.h_minus = 2.0 * w_minus * sig.p_minus * w_plus.adjoint();
  lp.v_h_plus = (lp.v_plus - lp.h_plus).norm();
  lp.v_h_minus = (lp.v_minus - lp.h_minus).norm();
  lp.trace_v_plus = lp.v_plus.trace();
  lp.trace_v_minus = lp.v_minus.trace();
  lp.trace_h_plus = lp.h_plus.trace();
  lp.trace_h_minus = lp.h_minus.trace();
  const ComplexMatrix i2 = identity(2);
  const ComplexMatrix& sn = cur.matrix.matrix();
  const ComplexMatrix& sp = prev.matrix.matrix();
  const double two_d = 2.0 * (1.0 + prev.vector.dot(cur.vector));
  lp.trace_product_plus = std::abs(((i2 + sn) * (i2 + sp)).trace() - two_d);
  lp.trace_product_minus = std::abs(((i2 - sn) * (i2 - sp)).trace() - two_d);
  return lp;
}

double zero_curvature_residual(const EvolutionState& s, int n, double t, Complex lambda, double h) {
  require_site(n);
  require_lambda(s, lambda);
  if (!(h > 0.0)) throw Error(ErrorCode::kPrecondition, "h must be positive");
  auto now = s.lattice_at(t, n + 2);
  const SpinSample prev = sample(*now, n - 1);
  const SpinSample cur = sample(*now, n);
  const SpinSample next = sample(*now, n + 1);
  const ComplexMatrix g = g_matrix(cur, lambda);
  const ComplexMatrix f_n = f_matrix(prev, cur, n, lambda);
  const ComplexMatrix f_next = f_matrix(cur, next, n + 1, lambda);
  const ComplexMatrix g_fwd = g_matrix(sample(*s.lattice_at(t + h, n + 1), n), lambda);
  const ComplexMatrix g_bwd = g_matrix(sample(*s.lattice_at(t - h, n + 1), n), lambda);
  const ComplexMatrix dg = (g_fwd - g_bwd) / (2.0 * h);
  return (dg - (f_next * g - g * f_n)).norm();
}

SpinVector ihm_rate(const EvolutionState& s, int n, double t) {
  require_site(n);
  auto lattice = s.lattice_at(t, n + 2);
  const SpinVector a = sample(*lattice, n - 1).vector;
  const SpinVector b = sample(*lattice, n).vector;
  const SpinVector c = sample(*lattice, n + 1).vector;
  const double dl = denominator(a, b, n);
  const double dr = denominator(b, c, n + 1);
  const SpinVector sum{c.s1 / dr + a.s1 / dl, c.s2 / dr + a.s2 / dl, c.s3 / dr + a.s3 / dl};
  const SpinVector x = b.cross(sum);
  return {2.0 * x.s1, 2.0 * x.s2, 2.0 * x.s3};
}

double ihm_residual(const EvolutionState& s, int n, double t, double h) {
  require_site(n);
  if (!(h > 0.0)) throw Error(ErrorCode::kPrecondition, "h must be positive");
  const SpinVector rate = ihm_rate(s, n, t);
  const SpinVector fwd = spin_evolution(s, n, t + h).vector;
  const SpinVector bwd = spin_evolution(s, n, t - h).vector;
  const double d1 = (fwd.s1 - bwd.s1) / (2.0 * h) - rate.s1;
  const double d2 = (fwd.s2 - bwd.s2) / (2.0 * h) - rate.s2;
  const double d3 = (fwd.s3 - bwd.s3) / (2.0 * h) - rate.s3;
  return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
}

ConvergenceOrder convergence_order(const std::function<double(double)>& residual, double h) {
  ConvergenceOrder c;
  c.coarse = residual(h);
  c.fine = residual(h / 2);
  c.ratio = c.fine > 0.0 ? c.coarse / c.fine : std::numeric_limits<double>::infinity();
  c.order = std::log2(c.ratio);
  return c;
}

Realization weyl_evolution(const EvolutionState& s, double t) {
  const ParameterTriple& t0 = s.initial();
  const int n = t0.order();
  const ComplexMatrix& a = t0.alpha();
  const ComplexMatrix e1_adj = expm(-2.0 * t * inverse(a.adjoint() + kI * identity(n)));
  const ComplexMatrix e2 = expm(-2.0 * t * inverse(a + kI * identity(n)));
  const ComplexMatrix e2_adj = expm(-2.0 * t * inverse(a.adjoint() - kI * identity(n)));
  const HermitianMatrix sigma = s.sigma0(t);
  if (!sigma.is_positive_definite(s.tolerances())) {
    throw Error(ErrorCode::kNotPositiveDefinite, "Σ₀(t) is not positive definite");
  }
  const LuFactor sigma_lu(sigma.matrix(), "Σ₀(t)");
  const ComplexMatrix sigma_inv = sigma_lu.solve(identity(n));
  const ComplexMatrix beta =
      a - kI * e2 * t0.theta2() * t0.theta2().adjoint() * e2_adj * sigma_inv;
  // iθ₁*e^{−2t(α*+i)⁻¹}Σ₀(t)⁻¹(λ − β̃)⁻¹ e^{−2t(α+i)⁻¹}θ₂ as iϑ₁*(λ − β̃)⁻¹ϑ₂.
  const ComplexMatrix row = t0.theta1().adjoint() * e1_adj * sigma_inv;
  return Realization(beta, row.adjoint(), e2 * t0.theta2());
}

ComplexMatrix monodromy(const EvolutionState& s, int n, double t, Complex lambda) {
  require_lambda(s, lambda);
  const TransferFunction w(s.lattice_at(t, std::max(n, 1)));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = std::pow((lambda - kI) / lambda, n) * std::exp(2.0 * t / (lambda - kI));
  d(1, 1) = std::pow((lambda + kI) / lambda, n) * std::exp(2.0 * t / (lambda + kI));
  return w.w_alpha_lambda(n, lambda) * d;
}

MonodromyResidual monodromy_residual(const EvolutionState& s, int n, double t, Complex lambda,
                                     double h) {
  require_site(n);
  auto lattice = s.lattice_at(t, n + 1);
  const SpinSample prev = sample(*lattice, n - 1);
  const SpinSample cur = sample(*lattice, n);
  const ComplexMatrix w_n = monodromy(s, n, t, lambda);
  const ComplexMatrix w_next = monodromy(s, n + 1, t, lambda);
  MonodromyResidual r;
  r.step = relative_residual(w_next, g_matrix(cur, lambda) * w_n);
  const ComplexMatrix dw = (monodromy(s, n, t + h, lambda) - monodromy(s, n, t - h, lambda)) / (2.0 * h);
  r.time = relative_residual(dw, f_matrix(prev, cur, n, lambda) * w_n);
  return r;
}

}  // namespace spinlattice
