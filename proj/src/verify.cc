#include "spinlattice/verify.h"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <memory>

#include "spinlattice/example.h"
#include "spinlattice/ihm_evolution.h"
#include "spinlattice/random.h"
#include "spinlattice/spin_lattice.h"
#include "spinlattice/transfer.h"
#include "spinlattice/weyl_direct.h"
#include "spinlattice/weyl_inverse.h"

namespace spinlattice {

namespace {

struct Measure {
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
  bool extra_ok = true;  // conditions that do not reduce to a residual
};

using Check = std::function<Measure(const VerifyOptions&, RandomSource&)>;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", x);
  return buf;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = 1469598103934665603ull ^ seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

using LatticePtr = std::shared_ptr<const LatticeState>;

std::vector<LatticePtr> corpus(const VerifyOptions& opt, RandomSource& rng, int max_n, int max_m,
                               int horizon) {
  std::vector<LatticePtr> out;
  for (int k = 0; k < opt.triples; ++k) {
    const ParameterTriple t = rng.fg_triple(1 + k % max_n, 1 + k % max_m);
    out.push_back(std::make_shared<const LatticeState>(LatticeState::generate(t, horizon, opt.tol)));
  }
  return out;
}

Complex lower_lambda(RandomSource& rng) { return {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, -0.2)}; }

std::vector<EvolutionState> evolution_corpus(const VerifyOptions& opt, RandomSource& rng, int count) {
  std::vector<EvolutionState> out;
  out.push_back(EvolutionState::create(ScalarExample().triple(), 6, SigmaMethod::kAuto, opt.tol));
  for (int k = 1; k < count; ++k) {
    out.push_back(EvolutionState::create(rng.fg_triple(1 + k % 4, 1), 6, SigmaMethod::kAuto, opt.tol));
  }
  return out;
}

Realization random_minimal(RandomSource& rng, int n, int m, const Tolerances& tol) {
  for (;;) {
    const Realization r(rng.gaussian(n, n), rng.gaussian(n, m), rng.gaussian(n, m));
    if (check_minimal(r, tol).minimal()) return r;
  }
}

// α = U[[α₁, iθ̃₁κ*], [0, H + 3I + (i/2)κκ*]]U*, θ₁ = U[θ̃₁; κ], θ₂ = U[θ̃₂; 0].
ParameterTriple hidden_block(RandomSource& rng, const ParameterTriple& core, int pad) {
  const int n = core.order();
  const int m = core.m();
  const int total = n + pad;
  const ComplexMatrix kappa = rng.gaussian(pad, m);
  ComplexMatrix a = ComplexMatrix::Zero(total, total);
  a.topLeftCorner(n, n) = core.alpha();
  a.topRightCorner(n, pad) = kI * core.theta1() * kappa.adjoint();
  a.bottomRightCorner(pad, pad) =
      rng.hermitian(pad) + 3.0 * identity(pad) + 0.5 * kI * kappa * kappa.adjoint();
  ComplexMatrix t1(total, m), t2 = ComplexMatrix::Zero(total, m);
  t1 << core.theta1(), kappa;
  t2.topRows(n) = core.theta2();
  const ComplexMatrix u = rng.unitary(total);
  return {u * a * u.adjoint(), u * t1, u * t2};
}

double spin_distance(const LatticeState& a, const LatticeState& b, int count) {
  double worst = 0.0;
  for (int n = 0; n < count; ++n) {
    worst = std::max(worst, (a.spin(n).matrix() - b.spin(n).matrix()).cwiseAbs().maxCoeff());
  }
  return worst;
}

const std::map<std::string, Check>& registry() {
  static const std::map<std::string, Check> checks = {
      {"example.closed_form",
       [](const VerifyOptions& opt, RandomSource&) {
         const ScalarExample ex;
         const LatticeState st = LatticeState::generate(ex.triple(), 30, opt.tol);
         double worst = 0.0;
         for (int n = 0; n <= 30; ++n) {
           worst = std::max(worst, std::abs(st.sigmas()[n].matrix()(0, 0) - ex.sigma(n)) / ex.sigma(n));
         }
         for (int n = 0; n < 30; ++n) {
           worst = std::max(worst, (st.spin(n).matrix() - ex.spin(n, 0.0)).cwiseAbs().maxCoeff());
         }
         const WeylFunction phi = weyl(ex.triple(), opt.tol);
         for (Complex lam : default_grid(ex.triple().alpha())) {
           worst = std::max(worst, std::abs(phi(lam, opt.tol)(0, 0) - ex.phi(0.0, lam)));
         }
         return Measure{worst, 1e-12, "Σ_n, S_n (n < 30), φ on the grid"};
       }},
      {"ihm.example_flow",
       [](const VerifyOptions& opt, RandomSource&) {
         const ScalarExample ex;
         const EvolutionState s = EvolutionState::create(ex.triple(), 6, SigmaMethod::kAuto, opt.tol);
         double worst = 0.0;
         for (double t : {-0.5, 0.2, 1.0}) {
           for (int n = 0; n < 5; ++n) {
             worst = std::max(worst, (spin_evolution(s, n, t).matrix.matrix() - ex.spin(n, t)).cwiseAbs().maxCoeff());
           }
           const Realization r = weyl_evolution(s, t);
           for (Complex lam : circle_grid(0.0, 3.0, 8)) {
             worst = std::max(worst, std::abs(r.evaluate(lam, opt.tol)(0, 0) - ex.phi(t, lam)));
           }
         }
         return Measure{worst, 1e-12, "S_n(t) and φ(t, λ) against the closed form"};
       }},
      {"lattice.involution",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& st : corpus(opt, rng, 6, 3, opt.horizon)) {
           for (int n = 0; n < static_cast<int>(st->spins().size()); ++n) {
             worst = std::max(worst, st->involution_residual(n) / st->involution_bound(n, 1.0));
           }
         }
         return Measure{worst, 1e-9, "‖S_n² − I‖ per unit cond(Σ_n)cond(Σ_{n+1})"};
       }},
      {"lattice.hermitian",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& st : corpus(opt, rng, 6, 3, opt.horizon)) {
           for (double a : st->spin_asymmetry()) worst = std::max(worst, a);
         }
         return Measure{worst, 1e-10, "‖S_n − S_n*‖"};
       }},
      {"lattice.identity",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         bool positive = true;
         for (const auto& st : corpus(opt, rng, 6, 3, opt.horizon)) {
           for (int n = 0; n <= st->horizon(); ++n) {
             worst = std::max(worst, st->identity_residual(n) / st->identity_scale(n));
             positive = positive && st->sigmas()[n].is_positive_definite(opt.tol);
           }
         }
         Measure m{worst, 1e-9, "αΣ_n − Σ_nα* = iΛ_nΛ_n*, relative; Σ_n positive"};
         m.extra_ok = positive;
         if (!positive) m.detail += " (some Σ_n not positive definite)";
         return m;
       }},
      {"lattice.k_identity",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& st : corpus(opt, rng, 5, 2, opt.horizon)) {
           for (int n = 0; n + 1 < static_cast<int>(st->spins().size()); ++n) {
             worst = std::max(worst, st->k_residual(n));
           }
         }
         return Measure{worst, 1e-9, "K_n identity in frame coordinates"};
       }},
      {"lattice.rank_structure",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double excess = 0.0;
         for (const auto& st : corpus(opt, rng, 6, 3, opt.horizon)) {
           for (int n = 0; n < static_cast<int>(st->spins().size()); ++n) {
             for (const auto& sv : {st->singular_values_plus(n), st->singular_values_minus(n)}) {
               const auto big = std::count_if(sv.begin(), sv.end(), [](double v) { return v > 1e-8; });
               excess = std::max(excess, static_cast<double>(big - st->m()));
             }
           }
         }
         return Measure{excess, 0.0, "singular values of I ± S_n above 1e−8, beyond m"};
       }},
      {"lattice.monotone",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         bool ok = true;
         for (const auto& st : corpus(opt, rng, 5, 2, opt.horizon)) {
           const MonotoneDiagnostics d = st->monotone_diagnostics(std::min(20, st->horizon()));
           ok = ok && d.r_non_decreasing() && d.q_non_increasing();
           for (std::size_t k = 0; k < d.r_slack.size(); ++k) {
             worst = std::max(worst, -d.r_increments_min_eig[k] / d.r_slack[k] * 1e-10);
           }
           for (std::size_t k = 0; k < d.q_slack.size(); ++k) {
             worst = std::max(worst, d.q_increments_max_eig[k] / d.q_slack[k] * 1e-10);
           }
         }
         Measure m{std::max(worst, 0.0), 1e-10, "eigenvalue violation of R_n ↑ and Q_n ↓, relative"};
         m.extra_ok = ok;
         return m;
       }},
      {"transfer.identities",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& st : corpus(opt, rng, 5, 3, std::min(opt.horizon, 12))) {
           const TransferFunction w(st);
           for (int q = 0; q < 5; ++q) {
             const Complex lam = lower_lambda(rng);
             for (int n = 0; n + 1 < st->frame_count(); ++n) {
               worst = std::max({worst, w.transfer_identity_residual(n, lam),
                                 w.inverse_product_residual(n, lam), w.gram_identity_residual(n, lam)});
             }
           }
         }
         return Measure{worst, 1e-9, "step identity, inverse product, Gram identity"};
       }},
      {"transfer.contractivity",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& st : corpus(opt, rng, 5, 2, std::min(opt.horizon, 12))) {
           const TransferFunction w(st);
           for (int q = 0; q < 5; ++q) {
             const Complex lam = lower_lambda(rng);
             for (int n = 0; n < st->frame_count(); ++n) {
               worst = std::max(worst, w.contractivity(n, lam) - 1.0);
             }
           }
         }
         return Measure{std::max(worst, 0.0), 1e-9, "largest singular value of W(n, λ) − 1, Im λ < 0"};
       }},
      {"transfer.block_identities",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& st : corpus(opt, rng, 5, 3, std::min(opt.horizon, 15))) {
           const TransferFunction w(st);
           for (int n = 0; n + 1 < st->frame_count(); ++n) {
             const BlockIdentityResiduals r = w.block_identity_residuals(n);
             worst = std::max({worst, r.first_block, r.second_block, r.plus_factorization,
                               r.minus_factorization});
           }
         }
         return Measure{worst, 1e-9, "block identities at ±i and I ± S_n factorizations"};
       }},
      {"fundamental.recursion",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& st : corpus(opt, rng, 4, 2, std::min(opt.horizon, 20))) {
           const TransferFunction w(st);
           for (int q = 0; q < 3; ++q) {
             const Complex lam = lower_lambda(rng);
             for (int n = 0; n < static_cast<int>(st->spins().size()); ++n) {
               worst = std::max(worst, w.fundamental_recursion_residual(n, lam));
             }
           }
         }
         return Measure{worst, 1e-9, "W_{n+1} − (I − (i/λ)S_n)W_n"};
       }},
      {"weyl.b_over_d",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (int k = 0; k < opt.triples; ++k) {
           const ParameterTriple t = rng.fg_triple(1 + k % 5, 1 + k % 3);
           const WeylFunction phi = weyl(t, opt.tol);
           for (Complex lam : default_grid(t.alpha())) {
             const BlockDecomposition b = block_decomposition(t, lam, opt.tol);
             worst = std::max(worst, relative_residual(phi(lam, opt.tol), b.b * inverse(b.d, "d")));
           }
         }
         return Measure{worst, 1e-10, "realization against b·d⁻¹"};
       }},
      {"weyl.general_sigma",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (int k = 0; k < opt.triples; ++k) {
           const ParameterTriple base = rng.fg_triple(1 + k % 4, 1 + k % 2);
           const ComplexMatrix r = rng.well_conditioned(base.order(), 5.0);
           const ParameterTriple t(r * base.alpha() * inverse(r), r * base.theta1(), r * base.theta2(),
                                   HermitianMatrix::symmetrized(r * r.adjoint()));
           const WeylFunction a = weyl(t, opt.tol);
           const WeylFunction b = weyl(normalize_sigma0(t, opt.tol), opt.tol);
           for (Complex lam : default_grid(t.alpha())) {
             worst = std::max(worst, relative_residual(a(lam, opt.tol), b(lam, opt.tol)));
           }
         }
         return Measure{worst, 1e-10, "general Σ₀ formula against the normalized triple"};
       }},
      {"weyl.summability",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         bool dichotomy = true;
         const Complex lam(0.0, -2.0);
         for (int k = 0; k < opt.triples; ++k) {
           const ParameterTriple t = rng.fg_triple(1 + k % 4, 1 + k % 2);
           const SummabilityReport good = summability_diagnostic(t, lam, 32, {}, opt.tol);
           const ComplexMatrix bad = weyl(t, opt.tol)(lam, opt.tol) + 0.1 * identity(t.m());
           const SummabilityReport off = summability_diagnostic(t, lam, 32, bad, opt.tol);
           dichotomy = dichotomy && good.is_cauchy && !off.is_cauchy;
           worst = std::max(worst, good.representation_residual.value_or(0.0));
         }
         Measure m{worst, 1e-9, "φ Cauchy, φ + 0.1I not; W_n[φ; I] representation residual"};
         m.extra_ok = dichotomy;
         if (!dichotomy) m.detail += " (dichotomy failed)";
         return m;
       }},
      {"inverse.riccati",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         bool positive = true;
         for (int k = 0; k < opt.triples; ++k) {
           const Realization r = random_minimal(rng, 1 + k % 5, 1 + k % 2, opt.tol);
           const RiccatiSolution sol = solve_riccati(r, opt.tol);
           worst = std::max(worst, sol.residual_norm / sol.residual_scale);
           positive = positive && sol.x.is_positive_definite(opt.tol);
         }
         Measure m{worst, 1e-10, "Riccati residual relative to its scale; X positive"};
         m.extra_ok = positive;
         return m;
       }},
      {"inverse.symmetry",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (int k = 0; k < opt.triples; ++k) {
           worst = std::max(worst, symmetry_residual(invert(random_minimal(rng, 1 + k % 5, 1 + k % 2, opt.tol), opt.tol)));
         }
         return Measure{worst, 1e-10, "β − β* = i(θ₁θ₁* − θ₂θ₂*)"};
       }},
      {"inverse.round_trip",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (int k = 0; k < opt.triples; ++k) {
           const Realization r = random_minimal(rng, 1 + k % 5, 1 + k % 2, opt.tol);
           const WeylFunction phi = weyl(invert(r, opt.tol), opt.tol);
           for (Complex lam : default_grid(r.gamma())) {
             worst = std::max(worst, relative_residual(phi(lam, opt.tol), r.evaluate(lam, opt.tol)));
           }
         }
         return Measure{worst, 1e-9, "weyl(invert(φ)) − φ on the grid"};
       }},
      {"inverse.similarity",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (int k = 0; k < opt.triples; ++k) {
           const Realization r = random_minimal(rng, 1 + k % 4, 1 + k % 2, opt.tol);
           const Realization moved = r.similarity(rng.well_conditioned(r.order(), 10.0));
           const LatticeState a = LatticeState::generate(invert(r, opt.tol), 10, opt.tol);
           const LatticeState b = LatticeState::generate(invert(moved, opt.tol), 10, opt.tol);
           worst = std::max(worst, spin_distance(a, b, 10));
         }
         return Measure{worst, 1e-9, "spins recovered from similar realizations"};
       }},
      {"reduce.hidden_block",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (int k = 0; k < opt.triples; ++k) {
           const ParameterTriple big = hidden_block(rng, rng.fg_triple(2 + k % 2, 1 + k % 2), 1 + k % 2);
           const ParameterTriple small = reduce_triple(big, ReduceOn::kTheta2, opt.tol);
           worst = std::max(worst, spin_distance(LatticeState::generate(big, 11, opt.tol),
                                                 LatticeState::generate(small, 11, opt.tol), 11));
         }
         return Measure{worst, 1e-10, "S_0 … S_10 before and after reduction"};
       }},
      {"reduce.normalize_sigma0",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (int k = 0; k < opt.triples; ++k) {
           const ParameterTriple base = rng.fg_triple(1 + k % 4, 1 + k % 2);
           const ComplexMatrix r = rng.well_conditioned(base.order(), 5.0);
           const ParameterTriple t(r * base.alpha() * inverse(r), r * base.theta1(), r * base.theta2(),
                                   HermitianMatrix::symmetrized(r * r.adjoint()));
           worst = std::max(worst, spin_distance(LatticeState::generate(t, 10, opt.tol),
                                                 LatticeState::generate(normalize_sigma0(t, opt.tol), 10, opt.tol), 10));
         }
         return Measure{worst, 1e-9, "spins with general Σ₀ against the normalized triple"};
       }},
      {"ihm.zero_curvature",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         double order = std::numeric_limits<double>::infinity();
         for (const auto& s : evolution_corpus(opt, rng, 4)) {
           for (int n = 1; n <= 3; ++n) worst = std::max(worst, zero_curvature_residual(s, n, 0.1, 3.0, 1e-4));
           order = std::min(order, convergence_order([&](double h) { return zero_curvature_residual(s, 1, 0.1, 3.0, h); }, 1e-3).order);
         }
         Measure m{worst, 1e-6, "dG_n/dt − (F_{n+1}G_n − G_nF_n), h = 1e−4; order " + sci(order)};
         m.extra_ok = order >= 1.9;
         return m;
       }},
      {"ihm.lattice_equation",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         double order = std::numeric_limits<double>::infinity();
         for (const auto& s : evolution_corpus(opt, rng, 4)) {
           for (int n = 1; n <= 3; ++n) worst = std::max(worst, ihm_residual(s, n, 0.1, 1e-4));
           order = std::min(order, convergence_order([&](double h) { return ihm_residual(s, 1, 0.1, h); }, 1e-3).order);
         }
         Measure m{worst, 1e-6, "IHM vector equation, h = 1e−4; order " + sci(order)};
         m.extra_ok = order >= 1.9;
         return m;
       }},
      {"ihm.lax_pair",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double vh = 0.0, traces = 0.0;
         for (const auto& s : evolution_corpus(opt, rng, 4)) {
           for (int n = 1; n <= 3; ++n) {
             const LaxPair lp = lax_pair(s, n, 0.05, Complex(2.0, 1.0));
             vh = std::max({vh, lp.v_h_plus, lp.v_h_minus});
             traces = std::max({traces, std::abs(lp.trace_v_plus - 2.0), std::abs(lp.trace_v_minus - 2.0),
                                lp.trace_product_plus, lp.trace_product_minus});
           }
         }
         Measure m{vh, 1e-8, "V^± − H^±; trace defects " + sci(traces)};
         m.extra_ok = traces <= 1e-9;
         return m;
       }},
      {"ihm.unit_norm",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& s : evolution_corpus(opt, rng, 4)) {
           for (double t : {-0.1, 0.0, 0.1}) {
             for (int n = 0; n < 5; ++n) worst = std::max(worst, spin_evolution(s, n, t).norm_defect);
           }
         }
         return Measure{worst, 1e-9, "|‖S⃗_n(t)‖ − 1|"};
       }},
      {"ihm.sigma_identity",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0, agree = 0.0;
         for (const auto& s : evolution_corpus(opt, rng, 4)) {
           for (double t = -0.2; t <= 0.2 + 1e-12; t += 0.1) {
             worst = std::max({worst, s.identity_residual(t, SigmaMethod::kSylvester),
                               s.identity_residual(t, SigmaMethod::kOde)});
             agree = std::max(agree, relative_residual(s.sigma0(t, SigmaMethod::kOde).matrix(),
                                                       s.sigma0(t, SigmaMethod::kSylvester).matrix()));
           }
         }
         Measure m{worst, 1e-9, "αΣ₀(t) − Σ₀(t)α* = iΛ₀(t)Λ₀(t)*; Sylvester vs RK4 " + sci(agree)};
         m.extra_ok = agree <= 1e-7;
         return m;
       }},
      {"ihm.monodromy",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& s : evolution_corpus(opt, rng, 4)) {
           for (int n = 1; n <= 3; ++n) worst = std::max(worst, monodromy_residual(s, n, 0.05, Complex(1.5, -0.7)).step);
         }
         return Measure{worst, 1e-9, "Ŵ_{n+1} − G_nŴ_n"};
       }},
      {"ihm.weyl_evolution",
       [](const VerifyOptions& opt, RandomSource& rng) {
         double worst = 0.0;
         for (const auto& s : evolution_corpus(opt, rng, 4)) {
           for (double t : {0.0, 0.1}) {
             const Realization r = weyl_evolution(s, t);
             const WeylFunction d = weyl(s.triple_at(t), opt.tol);
             for (Complex lam : default_grid(s.initial().alpha())) {
               worst = std::max(worst, relative_residual(r.evaluate(lam, opt.tol), d(lam, opt.tol)));
             }
           }
         }
         return Measure{worst, 1e-9, "φ(t, ·) against the direct map on the time-t triple"};
       }},
  };
  return checks;
}

}  // namespace

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& [name, check] : registry()) out.push_back(name);
  return out;
}

std::vector<CheckResult> run_checks(const VerifyOptions& opt, const std::vector<std::string>& names) {
  std::vector<std::string> selected = names.empty() ? check_names() : names;
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  for (const auto& n : selected) {
    if (!registry().count(n)) throw Error(ErrorCode::kPrecondition, "unknown check '" + n + "'");
  }
  std::vector<CheckResult> out(selected.size());
  const int count = static_cast<int>(selected.size());
  auto body = [&](int k) {
    CheckResult& r = out[k];
    r.name = selected[k];
    RandomSource rng(fnv1a(r.name, opt.seed));
    try {
      const Measure m = registry().at(r.name)(opt, rng);
      r.residual = m.residual;
      r.tolerance = m.tolerance;
      r.detail = m.detail;
      r.passed = m.extra_ok && m.residual <= m.tolerance;
    } catch (const std::exception& e) {
      r.residual = std::numeric_limits<double>::quiet_NaN();
      r.passed = false;
      r.detail = e.what();
    }
  };
  if (opt.exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < count; ++k) body(k);
  } else {
    for (int k = 0; k < count; ++k) body(k);
  }
  return out;
}

}  // namespace spinlattice
