#include "spinlattice/spin_lattice.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinlattice {

namespace {

ComplexMatrix apply_j(const ComplexMatrix& x, int m) {
  ComplexMatrix y = x;
  y.rightCols(m) *= -1.0;
  return y;
}

double max_eigenvalue(const ComplexMatrix& m) {
  const auto ev = HermitianMatrix::symmetrized(m).eigenvalues();
  return ev.empty() ? 0.0 : ev.back();
}

double min_eigenvalue(const ComplexMatrix& m) {
  const auto ev = HermitianMatrix::symmetrized(m).eigenvalues();
  return ev.empty() ? 0.0 : ev.front();
}

}  // namespace

Step advance(const ComplexMatrix& lambda, const HermitianMatrix& sigma, const LuFactor& alpha, int m) {
  const ComplexMatrix y = alpha.solve(identity(alpha.order()));
  const ComplexMatrix yl = y * lambda;
  const ComplexMatrix next_lambda = lambda + kI * apply_j(yl, m);
  const ComplexMatrix next_sigma = sigma.matrix() + y * sigma.matrix() * y.adjoint() +
                                   apply_j(yl, m) * yl.adjoint();
  return {next_lambda, HermitianMatrix::symmetrized(next_sigma)};
}

Step advance(const ComplexMatrix& lambda, const HermitianMatrix& sigma, const ComplexMatrix& alpha) {
  if (lambda.cols() % 2 != 0 || lambda.rows() != alpha.rows() || sigma.order() != alpha.rows()) {
    throw Error(ErrorCode::kDimension, "advance expects Λ of shape N×2m and Σ of order N");
  }
  return advance(lambda, sigma, LuFactor(alpha, "alpha"), static_cast<int>(lambda.cols() / 2));
}

ComplexMatrix lambda_closed_form(int n, const ParameterTriple& t) {
  if (n < 0) throw Error(ErrorCode::kPrecondition, "n must be non-negative");
  const ComplexMatrix y = LuFactor(t.alpha(), "alpha").solve(identity(t.order()));
  const ComplexMatrix plus = identity(t.order()) + kI * y;
  const ComplexMatrix minus = identity(t.order()) - kI * y;
  ComplexMatrix a = t.theta1();
  ComplexMatrix b = t.theta2();
  for (int k = 0; k < n; ++k) {
    a = plus * a;
    b = minus * b;
  }
  ComplexMatrix l(t.order(), 2 * t.m());
  l << a, b;
  return l;
}

// ---------------------------------------------------------------------------

bool MonotoneDiagnostics::r_non_decreasing() const {
  for (std::size_t k = 0; k < r_increments_min_eig.size(); ++k) {
    if (r_increments_min_eig[k] < -r_slack[k]) return false;
  }
  return true;
}

bool MonotoneDiagnostics::q_non_increasing() const {
  for (std::size_t k = 0; k < q_increments_max_eig.size(); ++k) {
    if (q_increments_max_eig[k] > q_slack[k]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

LatticeState::LatticeState(ParameterTriple t, int n_max, const Tolerances& tol)
    : triple_(std::move(t)), n_max_(n_max), tol_(tol), sig_(triple_.m()) {}

LatticeState LatticeState::generate(const ParameterTriple& t, int n_max, const Tolerances& tol) {
  if (n_max < 0) throw Error(ErrorCode::kPrecondition, "horizon must be non-negative");
  LatticeState s(t, n_max, tol);
  const int n = t.order();
  const int m = t.m();
  s.alpha_lu_ = LuFactor(t.alpha(), "alpha");

  s.lambdas_.push_back(t.lambda0());
  s.sigmas_.push_back(t.sigma0());
  s.sigma_asymmetry_.push_back(t.sigma0().asymmetry());
  s.conditioning_.push_back(t.sigma0().condition());
  for (int k = 0; k < n_max; ++k) {
    const Step next = advance(s.lambdas_.back(), s.sigmas_.back(), s.alpha_lu_, m);
    if (!next.sigma.matrix().allFinite() || next.sigma.matrix().norm() > tol.sigma_overflow) {
      throw Error(ErrorCode::kOverflow, "‖Σ_" + std::to_string(k + 1) + "‖ exceeds " +
                                            std::to_string(tol.sigma_overflow) +
                                            "; lower the horizon");
    }
    s.lambdas_.push_back(next.lambda);
    s.sigmas_.push_back(next.sigma);
    s.sigma_asymmetry_.push_back(next.sigma.asymmetry());
    s.conditioning_.push_back(next.sigma.condition());
  }

  const bool normalized = t.sigma0().is_positive_definite(tol);
  auto stop = [&s](int k, const std::string& why) {
    s.truncation_ = "Σ_" + std::to_string(k) + " " + why;
  };

  if (normalized) {
    Eigen::LLT<ComplexMatrix> llt(t.sigma0().matrix());
    const ComplexMatrix c = llt.matrixL();
    auto tri = c.triangularView<Eigen::Lower>();
    Frame f;
    f.link = c;
    f.alpha = tri.solve(ComplexMatrix(t.alpha() * c));
    f.lambda = tri.solve(t.lambda0());
    f.weighted = f.lambda.adjoint();
    f.metric = identity(n);
    f.condition = s.conditioning_.front();
    if (f.condition > tol.condition_max) {
      stop(0, "is ill-conditioned (cond " + std::to_string(f.condition) + ")");
    } else {
      s.frames_.push_back(std::move(f));
    }
    while (!s.truncation_ && s.frame_count() <= n_max) {
      const Frame& prev = s.frames_.back();
      const int k = s.frame_count();
      const ComplexMatrix y = LuFactor(prev.alpha, "alpha").solve(identity(n));
      const ComplexMatrix yl = y * prev.lambda;
      const ComplexMatrix step_lambda = prev.lambda + kI * apply_j(yl, m);
      const HermitianMatrix step_sigma = HermitianMatrix::symmetrized(
          identity(n) + y * y.adjoint() + apply_j(yl, m) * yl.adjoint());
      const double cond = step_sigma.condition();
      Eigen::LLT<ComplexMatrix> step(step_sigma.matrix());
      if (step.info() != Eigen::Success || !(step_sigma.min_eigenvalue() > 0.0)) {
        stop(k, "is not positive definite");
        break;
      }
      if (cond > tol.condition_max) {
        stop(k, "is ill-conditioned (cond " + std::to_string(cond) + ")");
        break;
      }
      const ComplexMatrix link = step.matrixL();
      auto ltri = link.triangularView<Eigen::Lower>();
      Frame next;
      next.link = link;
      next.alpha = ltri.solve(ComplexMatrix(prev.alpha * link));
      next.lambda = ltri.solve(step_lambda);
      next.weighted = next.lambda.adjoint();
      next.metric = identity(n);
      next.condition = cond;
      s.frames_.push_back(std::move(next));
    }
  } else {
    for (int k = 0; k <= n_max; ++k) {
      Frame f;
      f.alpha = t.alpha();
      f.lambda = s.lambdas_[k];
      f.metric = s.sigmas_[k].matrix();
      f.link = identity(n);
      try {
        LuFactor lu(s.sigmas_[k].matrix(), "sigma");
        f.condition = lu.condition();
        if (f.condition > tol.condition_max) {
          stop(k, "is ill-conditioned (cond " + std::to_string(f.condition) + ")");
          break;
        }
        f.weighted = lu.solve(f.lambda).adjoint();
      } catch (const Error&) {
        stop(k, "is singular");
        break;
      }
      s.frames_.push_back(std::move(f));
    }
  }

  const int last = std::min(n_max, s.frame_count() - 1);
  for (int k = 0; k < last; ++k) {
    const ComplexMatrix raw = s.sig_.j + s.gram(k) - s.gram(k + 1);
    s.spin_asymmetry_.push_back((raw - raw.adjoint()).norm());
    s.spins_.push_back(HermitianMatrix::symmetrized(raw));
  }
  return s;
}

void LatticeState::require_site(int n, int upper) const {
  if (n < 0 || n > upper) {
    throw Error(ErrorCode::kPrecondition,
                "site " + std::to_string(n) + " outside [0, " + std::to_string(upper) + "]");
  }
}

const Frame& LatticeState::frame(int n) const {
  require_site(n, n_max_);
  if (n >= frame_count()) {
    throw Error(ErrorCode::kConditioning,
                "n = " + std::to_string(n) + ": " + truncation_.value_or("Σ_n unavailable"));
  }
  return frames_[n];
}

ComplexMatrix LatticeState::gram(int n) const {
  const Frame& f = frame(n);
  return f.weighted * f.lambda;
}

const HermitianMatrix& LatticeState::spin(int n) const {
  require_site(n, n_max_ - 1);
  if (n >= static_cast<int>(spins_.size())) {
    throw Error(ErrorCode::kConditioning,
                "S_" + std::to_string(n) + " needs Σ_" + std::to_string(n) + " and Σ_" +
                    std::to_string(n + 1) + ": " + truncation_.value_or("unavailable"));
  }
  return spins_[n];
}

double LatticeState::involution_residual(int n) const {
  const ComplexMatrix& s = spin(n).matrix();
  return (s * s - identity(2 * m())).norm();
}

double LatticeState::involution_bound(int n, double spin_tol) const {
  return spin_tol * frame(n).condition * frame(n + 1).condition;
}

double LatticeState::identity_residual(int n) const {
  require_site(n, n_max_);
  const ComplexMatrix& s = sigmas_[n].matrix();
  const ComplexMatrix& l = lambdas_[n];
  const ComplexMatrix& a = triple_.alpha();
  return (a * s - s * a.adjoint() - kI * l * l.adjoint()).norm();
}

double LatticeState::identity_scale(int n) const {
  require_site(n, n_max_);
  const double l = lambdas_[n].norm();
  return triple_.alpha().norm() * sigmas_[n].matrix().norm() + l * l;
}

double LatticeState::k_residual(int n) const {
  const HermitianMatrix& s = spin(n);
  const Frame& f = frame(n);
  const Frame& g = frame(n + 1);
  const int order = triple_.order();
  const ComplexMatrix a2 = f.alpha * f.alpha;
  const ComplexMatrix next = g.link.triangularView<Eigen::Lower>()
                                 .solve<Eigen::OnTheRight>(g.weighted);
  const ComplexMatrix k =
      next * (a2 + identity(order)) - f.weighted * a2 + kI * s.matrix() * f.weighted * f.alpha;
  return k.norm();
}

std::vector<double> LatticeState::singular_values_plus(int n) const {
  return singular_values(identity(2 * m()) + spin(n).matrix());
}

std::vector<double> LatticeState::singular_values_minus(int n) const {
  return singular_values(identity(2 * m()) - spin(n).matrix());
}

MonotoneDiagnostics LatticeState::monotone_diagnostics(int n_last) const {
  if (n_last < 0 || n_last > n_max_) n_last = n_max_;
  const SpectrumReport spec = spectrum(triple_.alpha(), tol_);
  MonotoneDiagnostics d;
  d.r_defined = !spec.contains_plus_i;
  d.q_defined = !spec.contains_minus_i;
  if (!d.r_defined && !d.q_defined) {
    throw Error(ErrorCode::kSpectrum, "both ±i are eigenvalues of alpha (nearest to i: " +
                                          std::to_string(spec.nearest(kI).real()) + "+" +
                                          std::to_string(spec.nearest(kI).imag()) + "i)");
  }
  const int order = triple_.order();
  const ComplexMatrix y = alpha_lu_.solve(identity(order));

  auto run = [&](double sign, std::vector<HermitianMatrix>& seq, std::vector<double>& extreme,
                        std::vector<double>& formula, std::vector<double>& slack) {
    // P = (I ∓ iα⁻¹)⁻¹; sign = +1 gives R, sign = −1 gives Q.
    const ComplexMatrix p = inverse(identity(order) - sign * kI * y, "monotone factor");
    const ComplexMatrix jpm = sig_.j + sign * identity(2 * m());
    ComplexMatrix power = identity(order);
    for (int k = 0; k <= n_last; ++k) {
      if (k > 0) power = p * power;
      seq.push_back(HermitianMatrix::symmetrized(power * sigmas_[k].matrix() * power.adjoint()));
      if (k == 0) continue;
      const ComplexMatrix diff = seq[k].matrix() - seq[k - 1].matrix();
      const ComplexMatrix yl = power * y * lambdas_[k - 1];
      const ComplexMatrix closed = yl * jpm * yl.adjoint();
      const double scale = std::max(1.0, seq[k].matrix().norm());
      formula.push_back((diff - closed).norm() / scale);
      extreme.push_back(sign > 0 ? min_eigenvalue(diff) : max_eigenvalue(diff));
      slack.push_back(1e-10 * scale);
    }
  };
  if (d.r_defined) {
    run(1.0, d.r_sequence, d.r_increments_min_eig, d.r_increment_formula_residuals, d.r_slack);
  }
  if (d.q_defined) {
    run(-1.0, d.q_sequence, d.q_increments_max_eig, d.q_increment_formula_residuals, d.q_slack);
  }
  return d;
}

}  // namespace spinlattice
