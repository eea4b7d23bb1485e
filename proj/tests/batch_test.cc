#include <gtest/gtest.h>

#include <cstring>

#include <omp.h>

#include "oracles.h"
#include "spinlattice/batch.h"
#include "spinlattice/random.h"
#include "spinlattice/weyl_direct.h"

namespace sl = spinlattice;
using sl::Complex;
using sl::ComplexMatrix;

namespace {

bool bitwise_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(Complex) * a.size()) == 0;
}

class Batch : public ::testing::Test {
 protected:
  void SetUp() override { omp_set_num_threads(4); }
};

}  // namespace

TEST_F(Batch, WeylSamplesBitwiseEqual) {
  sl::RandomSource rng(81);
  const auto t = rng.fg_triple(4, 2);
  const auto phi = sl::weyl(t);
  const auto grid = sl::circle_grid(0.0, 5.0, 64);
  const auto a = sl::sample_weyl(phi.realization(), grid, sl::Execution::kSerial);
  const auto b = sl::sample_weyl(phi.realization(), grid, sl::Execution::kParallel);
  ASSERT_EQ(a.size(), grid.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_TRUE(bitwise_equal(a[k], b[k]));
    EXPECT_TRUE(bitwise_equal(a[k], phi(grid[k])));
  }
}

TEST_F(Batch, FundamentalTableLayout) {
  sl::RandomSource rng(82);
  const auto t = rng.fg_triple(3, 1);
  const sl::TransferFunction w(std::make_shared<const sl::LatticeState>(sl::LatticeState::generate(t, 10)));
  const std::vector<int> ns{0, 3, 7, 10};
  const std::vector<Complex> lams{{1.0, -1.0}, {-2.0, -0.5}, {0.3, -3.0}};
  const auto a = sl::fundamental_table(w, ns, lams, sl::Execution::kSerial);
  const auto b = sl::fundamental_table(w, ns, lams, sl::Execution::kParallel);
  ASSERT_EQ(a.size(), ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    ASSERT_EQ(a[i].size(), lams.size());
    for (std::size_t j = 0; j < lams.size(); ++j) {
      EXPECT_TRUE(bitwise_equal(a[i][j], b[i][j]));
      EXPECT_TRUE(bitwise_equal(a[i][j], w.fundamental(ns[i], lams[j])));
    }
  }
}

TEST_F(Batch, LowestIndexErrorWins) {
  const auto phi = sl::weyl(oracle::Example{}.triple());
  // β = 0, so λ = 0 is a pole; the first bad point is index 1.
  const std::vector<Complex> grid{1.0, 0.0, 2.0, 0.0};
  for (auto exec : {sl::Execution::kSerial, sl::Execution::kParallel}) {
    try {
      sl::sample_weyl(phi.realization(), grid, exec);
      FAIL();
    } catch (const sl::Error& e) {
      EXPECT_EQ(e.code(), sl::ErrorCode::kPole);
    }
  }
}

TEST_F(Batch, TrajectoryBitwiseEqual) {
  const auto s = sl::EvolutionState::create(oracle::Example{}.triple(), 6);
  const std::vector<double> times{0.0, 0.1, 0.2};
  sl::TrajectoryOptions opt;
  opt.n_first = 0;
  opt.n_last = 2;
  const auto a = sl::evolve_trajectory(s, times, opt, sl::Execution::kSerial);
  const auto b = sl::evolve_trajectory(s, times, opt, sl::Execution::kParallel);
  ASSERT_EQ(a.size(), 9u);
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].t, times[k / 3]);
    EXPECT_EQ(a[k].n, static_cast<int>(k % 3));
    EXPECT_EQ(std::memcmp(&a[k].s, &b[k].s, sizeof(sl::SpinVector)), 0);
    if (a[k].n == 0) {
      EXPECT_TRUE(std::isnan(a[k].zc_residual));
    } else {
      EXPECT_EQ(a[k].zc_residual, b[k].zc_residual);
      EXPECT_LE(a[k].zc_residual, 1e-7);
      EXPECT_LE(a[k].ihm_residual, 1e-6);
    }
  }
}

TEST_F(Batch, BadSiteRange) {
  const auto s = sl::EvolutionState::create(oracle::Example{}.triple(), 6);
  sl::TrajectoryOptions opt;
  opt.n_first = 3;
  opt.n_last = 1;
  EXPECT_THROW(sl::evolve_trajectory(s, {0.0}, opt), sl::Error);
}
