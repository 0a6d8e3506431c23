#include "lidarscan/golden.hpp"
#include "lidarscan/parallel.hpp"

#include <gtest/gtest.h>

using namespace lidarscan;

TEST(Parallel, BodeSweepMatchesSerial) {
  const LinearModel m = build_model(small_mirror(), 3);
  std::vector<double> w;
  for (int k = 0; k < 257; ++k) w.push_back(0.1 * (k + 1));
  const auto a = serial::bode_sweep(m, w);
  const auto b = parallel::bode_sweep(m, w);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].magnitude, b[k].magnitude);
    EXPECT_EQ(a[k].phase, b[k].phase);
  }
}

TEST(Parallel, FrictionPlateauGridMatchesSerial) {
  const std::vector<double> tcs{0.02, 0.04};
  const std::vector<double> u0s{1.0, 3.0};
  const auto a = serial::friction_plateau_grid(large_mirror(), tcs, u0s, 1e-5, 0.3);
  const auto b = parallel::friction_plateau_grid(large_mirror(), tcs, u0s, 1e-5, 0.3);
  EXPECT_EQ(a, b);
}

TEST(Parallel, ShootAllMatchesSerial) {
  const auto g = toc_goldens().front();
  const TocProblem p = make_problem(
      build_model(apply_correction(g.large ? large_mirror() : small_mirror(), g.correction), g.order), g.target_deg,
      g.u0);
  const auto starts = start_ladder(p, true);
  const auto a = serial::shoot_all(p, starts, 200);
  const auto b = parallel::shoot_all(p, starts, 200);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].intervals, b[k].intervals);
    EXPECT_EQ(a[k].converged, b[k].converged);
    EXPECT_EQ(a[k].initial_sign, b[k].initial_sign);
  }
}

TEST(Parallel, ReportsWorkerCount) { EXPECT_GE(parallel::max_threads(), 1); }
