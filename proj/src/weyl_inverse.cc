#include "spinlattice/weyl_inverse.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spinlattice {

Minimality check_minimal(const Realization& r, const Tolerances& tol) {
  return {is_full_range(r.gamma(), r.vartheta2(), tol).full_range,
          is_full_range(r.gamma().adjoint(), r.vartheta1(), tol).full_range};
}

Realization reduce_to_minimal(const Realization& r, const Tolerances& tol) {
  const ComplexMatrix q = krylov_basis(r.gamma(), r.vartheta2(), tol);
  const Realization reachable(q.adjoint() * r.gamma() * q, q.adjoint() * r.vartheta1(),
                              q.adjoint() * r.vartheta2());
  const ComplexMatrix p = krylov_basis(reachable.gamma().adjoint(), reachable.vartheta1(), tol);
  return Realization(p.adjoint() * reachable.gamma() * p, p.adjoint() * reachable.vartheta1(),
                     p.adjoint() * reachable.vartheta2());
}

double riccati_residual(const Realization& r, const ComplexMatrix& x) {
  const ComplexMatrix& g = r.gamma();
  const ComplexMatrix& v1 = r.vartheta1();
  const ComplexMatrix& v2 = r.vartheta2();
  return (g * x - x * g.adjoint() - kI * (x * v1 * v1.adjoint() * x - v2 * v2.adjoint())).norm();
}

namespace {

// Swaps the adjacent diagonal entries k, k+1 of the upper triangular t and
// updates the unitary u so that u·t·u* is unchanged.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& u, Eigen::Index k) {
  const Complex t12 = t(k, k + 1);
  const Complex diff = t(k + 1, k + 1) - t(k, k);
  const double r = std::hypot(std::abs(t12), std::abs(diff));
  if (r == 0.0) return;
  const Complex x1 = t12 / r;
  const Complex x2 = diff / r;
  Eigen::Matrix2cd q;
  q << x1, -std::conj(x2), x2, std::conj(x1);
  t.middleRows(k, 2) = q.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * q;
  u.middleCols(k, 2) = u.middleCols(k, 2) * q;
  t(k + 1, k) = 0.0;
}

}  // namespace

RiccatiSolution solve_riccati(const Realization& r, const Tolerances& tol) {
  const Minimality mm = check_minimal(r, tol);
  if (!mm.minimal()) {
    throw Error(ErrorCode::kPrecondition,
                std::string("Riccati solve needs a minimal realization (") +
                    (mm.controllable ? "" : "not controllable") +
                    (mm.controllable || mm.observable ? "" : ", ") +
                    (mm.observable ? "" : "not observable") + ")");
  }
  const int n = r.order();
  RiccatiSolution sol;
  if (n == 0) {
    sol.x = HermitianMatrix::identity(0);
    return sol;
  }
  const ComplexMatrix a = kI * r.gamma().adjoint();
  const ComplexMatrix g = r.vartheta1() * r.vartheta1().adjoint();
  const ComplexMatrix q = r.vartheta2() * r.vartheta2().adjoint();

  ComplexMatrix h(2 * n, 2 * n);
  h << a, -g, -q, -a.adjoint();
  Eigen::ComplexSchur<ComplexMatrix> schur(h);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumeric, "Schur iteration on the Hamiltonian did not converge after " +
                                         std::to_string(schur.getMaxIterations()) + " iterations");
  }
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix u = schur.matrixU();
  const double axis = tol.spectrum * std::max(1.0, h.norm());
  int stable = 0;
  for (Eigen::Index k = 0; k < 2 * n; ++k) {
    if (t(k, k).real() < -axis) ++stable;
    else if (std::abs(t(k, k).real()) <= axis) {
      throw Error(ErrorCode::kNumeric, "Hamiltonian has an eigenvalue on the imaginary axis");
    }
  }
  if (stable != n) {
    throw Error(ErrorCode::kNumeric, "Hamiltonian has " + std::to_string(stable) +
                                         " stable eigenvalues, expected " + std::to_string(n));
  }
  // Bubble the stable eigenvalues to the leading block.
  for (Eigen::Index pass = 0; pass < 2 * n; ++pass) {
    bool moved = false;
    for (Eigen::Index k = 0; k + 1 < 2 * n; ++k) {
      if (t(k, k).real() >= 0.0 && t(k + 1, k + 1).real() < 0.0) {
        swap_adjacent(t, u, k);
        moved = true;
      }
    }
    if (!moved) break;
  }
  const ComplexMatrix u1 = u.topLeftCorner(n, n);
  const ComplexMatrix u2 = u.bottomLeftCorner(n, n);
  const LuFactor u1_lu(u1.adjoint(), "stable basis");
  sol.subspace_condition = u1_lu.condition();
  ComplexMatrix x = u1_lu.solve(u2.adjoint()).adjoint();  // U₂U₁⁻¹
  x = 0.5 * (x + x.adjoint());

  double residual = riccati_residual(r, x);
  for (int it = 0; it < 8; ++it) {
    const ComplexMatrix ak = a - g * x;
    ComplexMatrix next;
    try {
      next = solve_sylvester(ak.adjoint(), -ak, -q - x * g * x, tol);
    } catch (const Error&) {
      break;
    }
    next = 0.5 * (next + next.adjoint());
    const double next_residual = riccati_residual(r, next);
    if (!(next_residual < residual)) break;
    x = next;
    residual = next_residual;
    ++sol.newton_iterations;
  }

  sol.x = HermitianMatrix::symmetrized(x);
  sol.residual_norm = riccati_residual(r, sol.x.matrix());
  const double xn = x.norm();
  sol.residual_scale = r.gamma().norm() * xn + xn * xn * g.norm() + q.norm();
  const double min_eig = sol.x.min_eigenvalue();
  if (!(min_eig >= 1e-12)) {
    throw Error(ErrorCode::kNumeric, "Riccati solution is not positive definite (minimum eigenvalue " +
                                         std::to_string(min_eig) + ", residual " +
                                         std::to_string(residual) + ")");
  }
  return sol;
}

namespace {

// (X^{−1/2}γX^{1/2}, X^{1/2}ϑ₁, X^{−1/2}ϑ₂).
Realization symmetrize(const Realization& r, const HermitianMatrix& x, const Tolerances& tol) {
  const ComplexMatrix root = hermitian_sqrt(x, tol).matrix();
  const ComplexMatrix inv_root = hermitian_inverse_sqrt(x, tol).matrix();
  return Realization(inv_root * r.gamma() * root, root * r.vartheta1(), inv_root * r.vartheta2());
}

}  // namespace

ParameterTriple invert(const Realization& input, const Tolerances& tol) {
  const Realization r = check_minimal(input, tol).minimal() ? input : reduce_to_minimal(input, tol);
  const RiccatiSolution sol = solve_riccati(r, tol);
  if (r.order() == 0) {
    return ParameterTriple(ComplexMatrix(0, 0), ComplexMatrix(0, r.m()), ComplexMatrix(0, r.m()));
  }
  Realization sym = symmetrize(r, sol.x, tol);
  // Refinement: in the new coordinates X ≈ I, so a second solve is well
  // conditioned even when the first X was not.
  double residual = riccati_residual(sym, identity(sym.order()));
  for (int it = 0; it < 3 && residual > 0.0; ++it) {
    RiccatiSolution step;
    try {
      step = solve_riccati(sym, tol);
    } catch (const Error&) {
      break;
    }
    const Realization next = symmetrize(sym, step.x, tol);
    const double next_residual = riccati_residual(next, identity(next.order()));
    if (!(next_residual < residual)) break;
    sym = next;
    residual = next_residual;
  }
  const ComplexMatrix& theta2 = sym.vartheta2();
  const ParameterTriple t(sym.gamma() + kI * theta2 * theta2.adjoint(), sym.vartheta1(), theta2);
  const AdmissibilityReport report = validate(t, tol);
  if (report.triple_class != TripleClass::kFG) {
    throw Error(ErrorCode::kInconsistent, "recovered triple is " +
                                              std::string(to_string(report.triple_class)) +
                                              " (identity residual " +
                                              std::to_string(report.identity_residual) + ")");
  }
  return t;
}

double symmetry_residual(const ParameterTriple& t) {
  const ComplexMatrix beta = t.alpha() - kI * t.theta2() * t.theta2().adjoint();
  return (beta - beta.adjoint() -
          kI * (t.theta1() * t.theta1().adjoint() - t.theta2() * t.theta2().adjoint()))
      .norm();
}

}  // namespace spinlattice
