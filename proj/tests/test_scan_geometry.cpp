#include "lidarscan/golden.hpp"
#include "lidarscan/scan_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lidarscan;

namespace {

std::vector<ScanSample> synthetic_table(double separation) {
  ScanConfig cfg;
  cfg.mirror_separation_m = separation;
  return flatten(generate_ideal_scan(cfg, 0.4));
}

}  // namespace

TEST(IdealAngles, ReferenceRows) {
  const ScanConfig cfg;
  const auto a0 = ideal_angles(0.0, cfg);
  EXPECT_NEAR(rad_to_deg(a0.first), 8.35, 1e-12);
  EXPECT_NEAR(rad_to_deg(a0.second), 0.0, 1e-12);
  const auto a1 = ideal_angles(0.004, cfg);
  EXPECT_NEAR(rad_to_deg(a1.first), 8.33, kAngleTolerance);
  EXPECT_NEAR(rad_to_deg(a1.second), -1.72, kAngleTolerance);
  const auto a2 = ideal_angles(0.2, cfg);
  EXPECT_NEAR(rad_to_deg(a2.first), -8.35, 1e-12);
  EXPECT_NEAR(rad_to_deg(a2.second), 0.0, 1e-9);
}

TEST(IdealScan, ReproducesReferenceTable) {
  const auto samples = flatten(generate_ideal_scan(ScanConfig{}, 0.4));
  const auto& ref = table2();
  ASSERT_EQ(samples.size(), ref.size());
  for (std::size_t k = 0; k < ref.size(); ++k) {
    EXPECT_NEAR(samples[k].t, ref[k].t, 1e-12);
    EXPECT_NEAR(samples[k].phi_lm, ref[k].phi_lm, kAngleTolerance) << k;
    EXPECT_NEAR(samples[k].phi_sm, ref[k].phi_sm, kAngleTolerance) << k;
    EXPECT_NEAR(samples[k].x, ref[k].x, kPlaneTolerance) << k;
    EXPECT_NEAR(samples[k].y, ref[k].y, kPlaneTolerance) << k;
  }
}

TEST(IdealScan, PassesAndParity) {
  const auto passes = generate_ideal_scan(ScanConfig{}, 0.4);
  ASSERT_EQ(passes.size(), 2u);
  EXPECT_EQ(passes[0].index, 1);
  EXPECT_EQ(passes[0].parity, Parity::odd);
  EXPECT_EQ(passes[1].parity, Parity::even);
  EXPECT_EQ(passes[0].samples.size() + passes[1].samples.size(), 101u);
  EXPECT_TRUE(generate_ideal_scan(ScanConfig{}, 0.0).empty());
}

TEST(IdealScan, OddEvenSymmetry) {
  const ScanConfig cfg;
  for (int k = 0; k <= 50; ++k) {
    const double t = k * cfg.sample_period;
    const auto [lm0, sm0] = ideal_angles(t, cfg);
    const auto [lm1, sm1] = ideal_angles(t + 0.2, cfg);
    EXPECT_NEAR(lm0 + lm1, 0.0, 1e-9);
    const auto p0 = angles_to_plane(lm0, sm0, cfg);
    const auto p1 = angles_to_plane(lm1, sm1, cfg);
    EXPECT_LT(std::abs(p0.x + p1.x), 1e-9);
  }
}

TEST(IdealScan, PeriodicOverFullPattern) {
  ScanConfig cfg;
  const auto a = flatten(generate_ideal_scan(cfg, 0.8));
  for (std::size_t k = 0; k + 100 < a.size(); ++k) {
    EXPECT_LT(std::abs(a[k].phi_lm - a[k + 100].phi_lm), 1e-9);
    EXPECT_LT(std::abs(a[k].phi_sm - a[k + 100].phi_sm), 1e-9);
    EXPECT_LT(std::abs(a[k].x - a[k + 100].x), 1e-9);
    EXPECT_LT(std::abs(a[k].y - a[k + 100].y), 1e-9);
  }
}

TEST(Geometry, HorizontalMapIsMonotone) {
  const ScanConfig cfg;
  double previous = -INFINITY;
  for (double deg = -44.9; deg < 45.0; deg += 0.1) {
    const double x = angles_to_plane(deg_to_rad(deg / 2.0), 0.0, cfg).x;
    EXPECT_GT(x, previous);
    previous = x;
  }
}

TEST(Geometry, RangeScaling) {
  ScanConfig a;
  ScanConfig b = a;
  b.range_m = 2.0 * a.range_m;
  for (const auto& s : table2()) {
    const double lm = deg_to_rad(s.phi_lm);
    const double sm = deg_to_rad(s.phi_sm);
    const auto pa = angles_to_plane(lm, sm, a);
    const auto pb = angles_to_plane(lm, sm, b);
    EXPECT_EQ(pb.x, 2.0 * pa.x);
    const double slant = a.range_m / std::cos(2.0 * lm);
    const double expected = pa.y * (2.0 * slant + a.mirror_separation_m) / (slant + a.mirror_separation_m);
    EXPECT_NEAR(pb.y, expected, 1e-9 * std::max(1.0, std::abs(expected)));
  }
}

TEST(Geometry, OutOfRangeAngle) {
  EXPECT_THROW(angles_to_plane(deg_to_rad(45.0), 0.0, ScanConfig{}), Error);
}

TEST(Calibration, ReferenceTableFit) {
  const SeparationFit fit = calibrate_separation(table2(), 200.0);
  EXPECT_GT(fit.separation_m, 0.0);
  EXPECT_LT(fit.rms_m, 0.05);
  EXPECT_NEAR(fit.separation_m, kCalibratedSeparation, 1e-3);
}

TEST(Calibration, RecoversKnownSeparation) {
  EXPECT_NEAR(calibrate_separation(synthetic_table(0.3), 200.0).separation_m, 0.3, 1e-9);
}

TEST(Calibration, Idempotent) {
  const double d = calibrate_separation(table2(), 200.0).separation_m;
  EXPECT_NEAR(calibrate_separation(synthetic_table(d), 200.0).separation_m, d, 1e-9);
}

TEST(Calibration, DegenerateAndShortInputs) {
  auto flat = synthetic_table(0.3);
  for (auto& s : flat) s.phi_sm = 0.0;
  try {
    calibrate_separation(flat, 200.0);
    FAIL() << "expected degenerate_fit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_fit);
  }
  auto few = synthetic_table(0.3);
  few.resize(5);
  EXPECT_THROW(calibrate_separation(few, 200.0), Error);
}

TEST(ScanConfig, Validation) {
  ScanConfig cfg;
  cfg.range_m = -1.0;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(generate_ideal_scan(ScanConfig{}, -1.0), Error);
}
