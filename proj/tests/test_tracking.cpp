#include "lidarscan/csv.hpp"
#include "lidarscan/tracking.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lidarscan;

namespace {

PlantSpec plant(bool large, Correction corr, int order = 3, bool friction = false) {
  PlantSpec p;
  p.params = apply_correction(large ? large_mirror() : small_mirror(), corr);
  p.order = order;
  p.friction = friction;
  if (friction) p.params.Tc = kCalibratedTc;
  return p;
}

ControllerConfig controller(double u0, double ts_control, double ts_demand, bool prediction = true) {
  ControllerConfig c;
  c.u0 = u0;
  c.ts_control = ts_control;
  c.ts_demand = ts_demand;
  c.prediction = prediction;
  return c;
}

/// Half the peak-to-peak angle over the second half of the run, rad.
double steady_amplitude(const TrackingResult& r) {
  const auto& phi = r.series[channel::phi];
  double lo = INFINITY;
  double hi = -INFINITY;
  for (std::size_t k = phi.size() / 2; k < phi.size(); ++k) {
    lo = std::min(lo, phi[k]);
    hi = std::max(hi, phi[k]);
  }
  return 0.5 * (hi - lo);
}

const DemandSignal kSmallSine = DemandSignal::sine(deg_to_rad(3.57), 20.0);
const DemandSignal kLargeSine = DemandSignal::sine(deg_to_rad(8.35), 2.5);

}  // namespace

TEST(Tracking, ControlIsAlwaysFullBang) {
  for (const bool friction : {false, true}) {
    const auto r = run_tracking(plant(false, Correction::zero_pivot_stiffness, 3, friction),
                                controller(20.0, 1e-3, 1e-3), kSmallSine, 0.3);
    for (double u : r.series[channel::input]) ASSERT_EQ(std::abs(u), 20.0);
  }
}

TEST(Tracking, PredictionReducesSteadyOscillation) {
  const DemandSignal d = DemandSignal::constant_of(deg_to_rad(8.35));
  for (const int order : {2, 3}) {
    const PlantSpec p = plant(true, Correction::damping_x10, order);
    const auto with = run_tracking(p, controller(10.0, 1e-3, 1e-3, true), d, 1.0);
    const auto without = run_tracking(p, controller(10.0, 1e-3, 1e-3, false), d, 1.0);
    EXPECT_LT(steady_amplitude(with), steady_amplitude(without)) << order;
  }
}

TEST(Tracking, AccuracyDegradesWithSlowerSampling) {
  const PlantSpec p = plant(false, Correction::zero_pivot_stiffness);
  double previous = 0.0;
  for (const double ts : {1e-4, 1e-3, 4e-3}) {
    const auto r = run_tracking(p, controller(20.0, ts, ts), kSmallSine, 0.5);
    EXPECT_GT(r.accuracy_achieved, previous) << ts;
    previous = r.accuracy_achieved;
  }
}

TEST(Tracking, TransitionBounds) {
  const auto large = run_tracking(plant(true, Correction::zero_pivot_stiffness, 3, true),
                                  controller(20.0, 1e-3, 1e-3), kLargeSine, 1.0);
  EXPECT_LT(large.transition_time, 0.2);
  const auto small = run_tracking(plant(false, Correction::zero_pivot_stiffness, 3, true),
                                  controller(20.0, 1e-3, 1e-3), kSmallSine, 0.5);
  EXPECT_LT(small.transition_time, 0.1);
}

TEST(Tracking, InsufficientAuthorityDetected) {
  const auto r = run_tracking(plant(true, Correction::damping_x10), controller(10.0, 1e-3, 1e-3),
                              DemandSignal::constant_of(deg_to_rad(8.35)), 0.2);
  EXPECT_GT(r.accuracy_achieved, deg_to_rad(0.5));
}

TEST(Tracking, AtTargetChatterBoundedByOneSampleSlew) {
  const PlantSpec p = plant(true, Correction::zero_pivot_stiffness, 2);
  const ControllerConfig c = controller(20.0, 1e-3, 1e-3);
  const auto r = run_tracking(p, c, DemandSignal::constant_of(0.0), 0.2);
  const LinearModel m = build_model(p.params, 2);
  EXPECT_LE(r.accuracy_achieved, c.u0 * std::abs(m.B(1)) * c.ts_control * c.ts_control);
}

TEST(Tracking, RunsAreDeterministic) {
  const PlantSpec p = plant(false, Correction::zero_pivot_stiffness, 3, true);
  const ControllerConfig c = controller(20.0, 1e-3, 4e-3);
  const auto a = run_tracking(p, c, kSmallSine, 0.2);
  const auto b = run_tracking(p, c, kSmallSine, 0.2);
  EXPECT_EQ(to_csv(series_table(a.series)), to_csv(series_table(b.series)));
  EXPECT_EQ(a.accuracy_achieved, b.accuracy_achieved);
}

TEST(Tracking, DemandHeldBetweenDemandSamples) {
  const auto r = run_tracking(plant(false, Correction::zero_pivot_stiffness), controller(20.0, 1e-3, 4e-3),
                              kSmallSine, 0.05);
  const auto& d = r.series[channel::demand];
  const double dt = r.series.dt();
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double t = r.series.time(k);
    const double held = std::floor(t / 4e-3 + 1e-9) * 4e-3;
    ASSERT_NEAR(d[k], kSmallSine.value(held), 1e-12) << t << ' ' << dt;
  }
}

TEST(CompareRuns, IdentityAndGridMismatch) {
  const PlantSpec p = plant(false, Correction::zero_pivot_stiffness);
  const auto a = run_tracking(p, controller(20.0, 1e-3, 1e-3), kSmallSine, 0.1);
  const auto same = compare_runs(a, a);
  EXPECT_EQ(same.max_abs, 0.0);
  for (double v : same.difference) EXPECT_EQ(v, 0.0);
  const auto shorter = run_tracking(p, controller(20.0, 1e-3, 1e-3), kSmallSine, 0.05);
  try {
    compare_runs(a, shorter);
    FAIL() << "expected mismatched_grids";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::mismatched_grids);
  }
}

TEST(PhaseDelay, ShrinksTowardsZeroAtLowFrequency) {
  const PlantSpec p = plant(true, Correction::zero_pivot_stiffness);
  const ControllerConfig c = controller(20.0, 1e-3, 1e-3);
  const double fast = measure_phase_delay(p, c, DemandSignal::sine(deg_to_rad(8.35), 2.5), 2.0);
  const double slow = measure_phase_delay(p, c, DemandSignal::sine(deg_to_rad(8.35), 0.5), 10.0);
  EXPECT_LT(fast, 0.0);
  EXPECT_LT(std::abs(slow), std::abs(fast));
  EXPECT_LT(std::abs(slow), deg_to_rad(1.0));
}

TEST(PhaseDelay, ShiftCompensatesDelay) {
  const PlantSpec p = plant(true, Correction::zero_pivot_stiffness);
  ControllerConfig c = controller(20.0, 1e-3, 1e-3);
  const double delay = measure_phase_delay(p, c, kLargeSine, 2.0);
  c.phase_shift = -delay;
  const auto r = run_tracking(p, c, kLargeSine, 2.0);
  EXPECT_LT(std::abs(fundamental_phase(r, kLargeSine)), 0.25 * std::abs(delay));
}

TEST(Demand, SquareWaveStartsHighWithHalfDuty) {
  const DemandSignal s = DemandSignal::square_of(1.0, 10.0);
  EXPECT_EQ(s.value(0.0), 1.0);
  EXPECT_EQ(s.value(0.049), 1.0);
  EXPECT_EQ(s.value(0.05), -1.0);
  EXPECT_EQ(s.value(0.099), -1.0);
  EXPECT_EQ(s.value(0.1), 1.0);
}

TEST(Demand, ValidationAndParsing) {
  EXPECT_THROW(DemandSignal::sine(1.0, 0.0).validate(), Error);
  EXPECT_THROW(parse_demand_kind("triangle"), Error);
  EXPECT_EQ(parse_demand_kind(to_string(DemandKind::square)), DemandKind::square);
  EXPECT_EQ(parse_target_mode(to_string(TargetMode::position_velocity)), TargetMode::position_velocity);
}

TEST(Controller, ConfigValidation) {
  EXPECT_THROW(controller(20.0, 1e-3, 2.5e-3).validate(), Error);
  EXPECT_THROW(controller(0.0, 1e-3, 1e-3).validate(), Error);
  EXPECT_NO_THROW(controller(20.0, 1e-3, 4e-3).validate());
  PlantSpec p = plant(true, Correction::none, 2, true);
  EXPECT_THROW(p.validate(), Error);
}
