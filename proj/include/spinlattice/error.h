#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spinlattice {

enum class ErrorCode {
  kDimension,
  kNumeric,
  kNotPositiveDefinite,
  kSingular,
  kSpectrum,
  kPole,
  kConditioning,
  kAdmissibility,
  kDegeneracy,
  kPrecondition,
  kOverflow,
  kInconsistent,
  kParse,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code classifies the failure; the
/// message carries the numbers (offending n, eigenvalue, iteration count).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spinlattice
