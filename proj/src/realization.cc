#include "spinlattice/realization.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinlattice {

Realization::Realization(ComplexMatrix gamma, ComplexMatrix vartheta1, ComplexMatrix vartheta2)
    : gamma_(std::move(gamma)), vartheta1_(std::move(vartheta1)), vartheta2_(std::move(vartheta2)) {
  require_square(gamma_, "gamma");
  if (vartheta1_.rows() != gamma_.rows() || vartheta2_.rows() != gamma_.rows()) {
    throw Error(ErrorCode::kDimension,
                "vartheta1 and vartheta2 must have " + std::to_string(gamma_.rows()) + " rows");
  }
  if (vartheta1_.cols() != vartheta2_.cols() || vartheta1_.cols() == 0) {
    throw Error(ErrorCode::kDimension, "vartheta1 and vartheta2 must have the same positive width");
  }
  require_finite(gamma_, "gamma");
  require_finite(vartheta1_, "vartheta1");
  require_finite(vartheta2_, "vartheta2");
}

ComplexMatrix Realization::evaluate(Complex lambda, const Tolerances& tol) const {
  if (order() == 0) return ComplexMatrix::Zero(m(), m());
  const SpectrumReport s = spectrum(gamma_, tol);
  const double radius = tol.pole * std::max(1.0, gamma_.norm());
  if (s.distance_to(lambda) <= radius) {
    std::ostringstream os;
    os << "λ = " << lambda << " is within " << radius << " of the pole " << s.nearest(lambda);
    throw Error(ErrorCode::kPole, os.str());
  }
  const ComplexMatrix shifted = lambda * identity(order()) - gamma_;
  return kI * vartheta1_.adjoint() * LuFactor(shifted, "λI − γ").solve(vartheta2_);
}

Realization Realization::similarity(const ComplexMatrix& t) const {
  const LuFactor lu(t, "similarity");
  const ComplexMatrix t_inv = lu.solve(identity(order()));
  return Realization(t * gamma_ * t_inv, t_inv.adjoint() * vartheta1_, t * vartheta2_);
}

std::vector<Complex> circle_grid(Complex center, double radius, int count) {
  if (count <= 0 || !(radius > 0.0)) {
    throw Error(ErrorCode::kPrecondition, "λ-grid needs a positive radius and count");
  }
  std::vector<Complex> grid;
  grid.reserve(count);
  for (int k = 0; k < count; ++k) {
    grid.push_back(center + std::polar(radius, 2.0 * M_PI * (k + 0.5) / count));
  }
  return grid;
}

std::vector<Complex> default_grid(const ComplexMatrix& a) {
  return circle_grid(0.0, 2.0 * (1.0 + a.norm()), 20);
}

}  // namespace spinlattice
