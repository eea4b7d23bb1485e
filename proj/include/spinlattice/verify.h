#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spinlattice/batch.h"
#include "spinlattice/tolerances.h"

namespace spinlattice {

struct CheckResult {
  std::string name;
  bool passed = false;
  /// Worst residual seen (NaN if the check threw before measuring).
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int triples = 10;  // random corpus size per check
  int horizon = 20;
  Tolerances tol;
  Execution exec = Execution::kParallel;
};

/// Names of every check, sorted.
std::vector<std::string> check_names();

/// Runs the named checks (all when `names` is empty). Each check draws from its
/// own generator seeded from the seed and its name, so results do not depend
/// on scheduling. The output is sorted by name. Throws Error(kPrecondition)
/// for an unknown name.
std::vector<CheckResult> run_checks(const VerifyOptions& opt, const std::vector<std::string>& names = {});

}  // namespace spinlattice
