#include "spinlattice/batch.h"

#include <exception>
#include <limits>

#include <omp.h>

namespace spinlattice {

namespace {

template <typename F>
void for_each_index(int count, Execution exec, F&& body) {
  std::vector<std::exception_ptr> errors(count);
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < count; ++k) {
      try {
        body(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  } else {
    for (int k = 0; k < count; ++k) {
      try {
        body(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int max_threads() { return omp_get_max_threads(); }

std::vector<ComplexMatrix> sample_weyl(const Realization& r, const std::vector<Complex>& grid,
                                       Execution exec, const Tolerances& tol) {
  std::vector<ComplexMatrix> out(grid.size());
  for_each_index(static_cast<int>(grid.size()), exec,
                 [&](int k) { out[k] = r.evaluate(grid[k], tol); });
  return out;
}

std::vector<std::vector<ComplexMatrix>> fundamental_table(const TransferFunction& w,
                                                          const std::vector<int>& ns,
                                                          const std::vector<Complex>& lambdas,
                                                          Execution exec) {
  std::vector<std::vector<ComplexMatrix>> out(ns.size(), std::vector<ComplexMatrix>(lambdas.size()));
  const int cols = static_cast<int>(lambdas.size());
  for_each_index(static_cast<int>(ns.size()) * cols, exec, [&](int k) {
    out[k / cols][k % cols] = w.fundamental(ns[k / cols], lambdas[k % cols]);
  });
  return out;
}

std::vector<TrajectoryRow> evolve_trajectory(const EvolutionState& s, const std::vector<double>& times,
                                             const TrajectoryOptions& opt, Execution exec) {
  if (opt.n_first < 0 || opt.n_last < opt.n_first) {
    throw Error(ErrorCode::kPrecondition, "site range must satisfy 0 ≤ first ≤ last");
  }
  const int sites = opt.n_last - opt.n_first + 1;
  std::vector<TrajectoryRow> rows(times.size() * sites);
  for_each_index(static_cast<int>(rows.size()), exec, [&](int k) {
    TrajectoryRow& row = rows[k];
    row.t = times[k / sites];
    row.n = opt.n_first + k % sites;
    row.s = spin_evolution(s, row.n, row.t).vector;
    if (row.n == 0) {
      row.zc_residual = std::numeric_limits<double>::quiet_NaN();
      row.ihm_residual = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.zc_residual = zero_curvature_residual(s, row.n, row.t, opt.lambda, opt.h);
      row.ihm_residual = ihm_residual(s, row.n, row.t, opt.h);
    }
  });
  return rows;
}

}  // namespace spinlattice
