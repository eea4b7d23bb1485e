#pragma once

#include <vector>

#include "spinlattice/ihm_evolution.h"
#include "spinlattice/realization.h"
#include "spinlattice/transfer.h"

namespace spinlattice {

/// kSerial is the reference loop; kParallel spreads the same per-item work over
/// OpenMP threads and returns bitwise identical results. An exception thrown
/// by any item is rethrown after the loop, the lowest index first.
enum class Execution { kSerial, kParallel };

std::vector<ComplexMatrix> sample_weyl(const Realization& r, const std::vector<Complex>& grid,
                                       Execution exec = Execution::kParallel,
                                       const Tolerances& tol = {});

/// W_n(λ) for every pair, laid out as [n index][λ index].
std::vector<std::vector<ComplexMatrix>> fundamental_table(const TransferFunction& w,
                                                          const std::vector<int>& ns,
                                                          const std::vector<Complex>& lambdas,
                                                          Execution exec = Execution::kParallel);

struct TrajectoryRow {
  double t = 0.0;
  int n = 0;
  SpinVector s;
  /// Residuals are NaN at the boundary site n = 0.
  double zc_residual = 0.0;
  double ihm_residual = 0.0;
};

struct TrajectoryOptions {
  int n_first = 1;
  int n_last = 3;
  Complex lambda{3.0, 0.0};
  double h = 1e-4;
};

std::vector<TrajectoryRow> evolve_trajectory(const EvolutionState& s, const std::vector<double>& times,
                                             const TrajectoryOptions& opt = {},
                                             Execution exec = Execution::kParallel);

int max_threads();

}  // namespace spinlattice
