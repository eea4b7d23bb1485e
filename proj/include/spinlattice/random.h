#pragma once

#include <cstdint>
#include <random>

#include "spinlattice/triples.h"

namespace spinlattice {

/// Seeded source of random test data. All draws go through one mt19937_64 so a
/// fixed seed reproduces the whole corpus.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  /// Entries with independent real and imaginary parts of variance 1/2.
  ComplexMatrix gaussian(int rows, int cols);
  ComplexMatrix hermitian(int n);
  ComplexMatrix unitary(int n);
  /// HPD with eigenvalues in [lo, hi].
  HermitianMatrix positive_definite(int n, double lo = 0.5, double hi = 2.0);
  /// Invertible matrix with singular values in [1, cond].
  ComplexMatrix well_conditioned(int n, double cond = 10.0);
  double uniform(double lo, double hi);
  Complex complex_uniform(double radius);

  /// Class FG triple with Σ₀ = I. α = H + (i/2)(θ₁θ₁* + θ₂θ₂*); when some
  /// eigenvalue of α lies within distance 2 of the origin, α is scaled by s
  /// and θ by √s so that all eigenvalues sit on or outside |z| = 2. Redrawn
  /// until both pairs are full range.
  ParameterTriple fg_triple(int n, int m);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace spinlattice
