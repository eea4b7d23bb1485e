#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinlattice::cli {

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kInputError = 2, kNumericFailure = 3 };

/// Runs one command line. args excludes the program name. Results go to `out`
/// (or the -o file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spinlattice::cli
