#include "spinlattice/tolerances.h"

#include <cmath>
#include <string>

#include "spinlattice/error.h"

namespace spinlattice {

namespace {

template <typename Tol>
auto* field(Tol& t, std::string_view name) {
  if (name == "hermitian") return &t.hermitian;
  if (name == "spectrum") return &t.spectrum;
  if (name == "posdef") return &t.posdef;
  if (name == "rank") return &t.rank;
  if (name == "identity") return &t.identity;
  if (name == "spin") return &t.spin;
  if (name == "pole") return &t.pole;
  if (name == "condition_max") return &t.condition_max;
  if (name == "sigma_overflow") return &t.sigma_overflow;
  throw Error(ErrorCode::kPrecondition, "unknown tolerance '" + std::string(name) + "'");
}

}  // namespace

void Tolerances::set(std::string_view name, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kPrecondition,
                "tolerance '" + std::string(name) + "' must be positive and finite");
  }
  *field(*this, name) = value;
}

double Tolerances::get(std::string_view name) const { return *field(*this, name); }

std::vector<std::string_view> Tolerances::names() {
  return {"hermitian", "spectrum", "posdef", "rank", "identity",
          "spin", "pole", "condition_max", "sigma_overflow"};
}

}  // namespace spinlattice
