#include "lidarscan/sim_engine.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace lidarscan;

namespace {

/// Independent fixed-step RK4 for x' = A x + B u.
Vec rk4(const LinearModel& m, Vec x, double u, double tau, int steps) {
  const double h = tau / steps;
  auto f = [&](const Vec& y) -> Vec { return m.A * y + m.B * u; };
  for (int k = 0; k < steps; ++k) {
    const Vec k1 = f(x);
    const Vec k2 = f(x + 0.5 * h * k1);
    const Vec k3 = f(x + 0.5 * h * k2);
    const Vec k4 = f(x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

double rel_diff(const Vec& a, const Vec& b) { return (a - b).norm() / std::max(b.norm(), 1e-300); }

LinearModel scalar_model(double a, double b) {
  LinearModel m;
  m.order = 1;
  m.A = Mat::Constant(1, 1, a);
  m.B = Vec::Constant(1, b);
  m.C = RowVec::Constant(1, 1.0);
  m.state_labels = {"x"};
  return m;
}

/// Stored energy: kinetic, pivot and magnetic.
double stored_energy(const ActuatorParams& p, double phi, double omega, double i) {
  return 0.5 * p.J * omega * omega + 0.5 * p.c * phi * phi + 0.5 * p.Lm * i * i;
}

}  // namespace

TEST(PropagateLti, PureIntegrator) {
  const Vec x = propagate_lti(scalar_model(0.0, 1.0), Vec::Zero(1), 1.0, 2.0);
  EXPECT_DOUBLE_EQ(x(0), 2.0);
}

TEST(PropagateLti, DoubleIntegrator) {
  LinearModel m;
  m.order = 2;
  m.A = Mat::Zero(2, 2);
  m.A(0, 1) = 1.0;
  m.B = Vec::Zero(2);
  m.B(1) = 1.0;
  m.C = RowVec::Zero(2);
  m.C(0) = 1.0;
  const double t = 0.7;
  const Vec x = propagate_lti(m, Vec::Zero(2), 1.0, t);
  EXPECT_NEAR(x(0), t * t / 2.0, 1e-15);
  EXPECT_NEAR(x(1), t, 1e-15);
}

TEST(PropagateLti, MatchesRk4OracleOnAllModels) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (const bool large : {true, false}) {
    for (const auto corr : {Correction::none, Correction::damping_x10, Correction::zero_pivot_stiffness}) {
      for (const int order : {2, 3}) {
        const LinearModel m = build_model(apply_correction(large ? large_mirror() : small_mirror(), corr), order);
        Vec x0(order);
        for (int k = 0; k < order; ++k) x0(k) = uni(rng);
        const double u = 10.0 * uni(rng);
        const double tau = 0.01;
        const Vec exact = propagate_lti(m, x0, u, tau);
        const Vec oracle = rk4(m, x0, u, tau, 10000);
        EXPECT_LE(rel_diff(exact, oracle), 1e-8) << large << ' ' << to_string(corr) << ' ' << order;
      }
    }
  }
}

TEST(PropagateLti, ZeroDurationIsIdentity) {
  const LinearModel m = build_model(large_mirror(), 3);
  Vec x0(3);
  x0 << 0.1, -0.2, 0.3;
  EXPECT_EQ(propagate_lti(m, x0, 5.0, 0.0), x0);
}

TEST(PropagateLti, TableThreeChainReachesTarget) {
  const LinearModel m = build_model(apply_correction(large_mirror(), Correction::damping_x10), 2);
  Vec x = propagate_lti(m, Vec::Zero(2), 10.0, 0.12713);
  x = propagate_lti(m, x, -10.0, 0.00652);
  EXPECT_NEAR(rad_to_deg(x(0)), 8.35, 0.01);
  EXPECT_NEAR(rad_to_deg(x(1)), 0.0, 2.0);
}

TEST(Propagator, ModalAgreesWithGeneralPath) {
  const LinearModel m = build_model(apply_correction(small_mirror(), Correction::zero_pivot_stiffness), 3);
  const auto modal = ModalPropagator::build(m);
  ASSERT_TRUE(modal.has_value());
  Vec x0(3);
  x0 << 0.01, 1.0, -0.2;
  for (const double tau : {1e-5, 1e-3, 0.02}) {
    const Propagator general(m, tau);
    const Propagator fast = modal->at(tau);
    EXPECT_LE(rel_diff(fast(x0, 7.0), general(x0, 7.0)), 1e-10);
  }
}

TEST(Propagator, ModalRefusesComplexModes) {
  EXPECT_FALSE(ModalPropagator::build(build_model(small_mirror(), 3)).has_value());
}

TEST(IntegrateLinear, AgreesWithExactUnderPiecewiseConstantInput) {
  const LinearModel m = build_model(apply_correction(large_mirror(), Correction::zero_pivot_stiffness), 3);
  const InputSignal u = InputSignal::piecewise({0.0, 0.002, 0.005}, {4.0, -3.0, 1.5});
  const double dt = 1e-6;
  const TimeSeries s = integrate_linear(m, Vec::Zero(3), u, dt, 0.008);
  Vec x = Vec::Zero(3);
  x = propagate_lti(m, x, 4.0, 0.002);
  x = propagate_lti(m, x, -3.0, 0.003);
  x = propagate_lti(m, x, 1.5, 0.003);
  const std::size_t last = s.rows() - 1;
  Vec numeric(3);
  numeric << s[channel::phi][last], s[channel::omega][last], s[channel::current][last];
  EXPECT_LE(rel_diff(numeric, x), 1e-8);
}

TEST(IntegrateLinear, LengthAndFrictionlessChannels) {
  const LinearModel m = build_model(large_mirror(), 3);
  const TimeSeries s = integrate_linear(m, Vec::Zero(3), InputSignal::step_of(1.0), 5e-5, 0.05);
  EXPECT_EQ(s.rows(), 1001u);
  for (std::size_t r = 0; r < s.rows(); ++r) {
    EXPECT_EQ(s[channel::torque_friction][r], 0.0);
    EXPECT_EQ(s[channel::torque_net][r], s[channel::torque_linear][r]);
    EXPECT_EQ(s[channel::stick][r], 0.0);
  }
}

TEST(IntegrateLinear, EquilibriumStaysZero) {
  const LinearModel m = build_model(small_mirror(), 3);
  const TimeSeries s = integrate_linear(m, Vec::Zero(3), InputSignal::step_of(0.0), 5e-5, 0.01);
  for (std::size_t c = 0; c < s.names().size(); ++c) {
    for (double v : s.column(c)) EXPECT_EQ(v, 0.0);
  }
}

TEST(IntegrateLinear, StepSettlesToDcGain) {
  const LinearModel m = build_model(large_mirror(), 3);
  const TimeSeries s = integrate_linear(m, Vec::Zero(3), InputSignal::step_of(1.0), 5e-5, 4.0);
  EXPECT_NEAR(s[channel::phi].back(), 0.0245, 5e-4);
}

TEST(IntegrateLinear, SuperpositionOfInputs) {
  const LinearModel m = build_model(large_mirror(), 3);
  const auto a = integrate_linear(m, Vec::Zero(3), InputSignal::cosine(2.0, 3.0), 5e-5, 0.2);
  const auto b = integrate_linear(m, Vec::Zero(3), InputSignal::step_of(1.5), 5e-5, 0.2);
  InputSignal both = InputSignal::cosine(2.0, 3.0);
  both.offset = 1.5;
  const auto ab = integrate_linear(m, Vec::Zero(3), both, 5e-5, 0.2);
  for (std::size_t r = 0; r < ab.rows(); ++r) {
    EXPECT_NEAR(ab[channel::phi][r], a[channel::phi][r] + b[channel::phi][r], 1e-9);
  }
}

TEST(IntegrateLinear, StabilityGuard) {
  const LinearModel m = build_model(large_mirror(), 3);
  try {
    integrate_linear(m, Vec::Zero(3), InputSignal::step_of(1.0), 1e-3, 0.01);
    FAIL() << "expected step_too_large";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::step_too_large);
  }
}

TEST(FrictionTorque, ThreeRegimes) {
  const auto slide = friction_torque(1.0, 0.3, 0.05);
  EXPECT_DOUBLE_EQ(slide.T_CF, 0.05);
  EXPECT_FALSE(slide.sticking);
  const auto stick = friction_torque(0.0, 0.02, 0.05);
  EXPECT_DOUBLE_EQ(stick.T_CF, 0.02);
  EXPECT_TRUE(stick.sticking);
  const auto breakaway = friction_torque(0.0, -0.10, 0.05);
  EXPECT_DOUBLE_EQ(breakaway.T_CF, -0.05);
  EXPECT_FALSE(breakaway.sticking);
}

TEST(IntegrateFriction, ZeroFrictionEqualsLinear) {
  const ActuatorParams p = large_mirror();
  const LinearModel m = build_model(p, 3);
  const InputSignal u = InputSignal::cosine(5.0, 2.5);
  const auto a = integrate_friction(m, p, Vec::Zero(3), u, 1e-5, 0.05);
  const auto b = integrate_linear(m, Vec::Zero(3), u, 1e-5, 0.05);
  ASSERT_EQ(a.rows(), b.rows());
  for (const auto& name : plant_channels()) {
    for (std::size_t r = 0; r < a.rows(); ++r) EXPECT_NEAR(a[name][r], b[name][r], 1e-12) << name;
  }
}

TEST(IntegrateFriction, RandomizedInvariants) {
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  for (int run = 0; run < 100; ++run) {
    ActuatorParams p = run % 2 ? large_mirror() : small_mirror();
    if (run % 3 == 0) p = apply_correction(p, Correction::zero_pivot_stiffness);
    p.Tc = 0.005 + 0.1 * pos(rng);
    const LinearModel m = build_model(p, 3);
    Vec x0(3);
    x0 << deg_to_rad(10.0 * uni(rng)), 5.0 * uni(rng), 0.5 * uni(rng);
    const bool free = run % 4 == 0;
    const InputSignal u = free ? InputSignal::step_of(0.0) : InputSignal::cosine(20.0 * uni(rng), 1.0 + 30.0 * pos(rng));
    const TimeSeries s = integrate_friction(m, p, x0, u, 1e-5, 0.05);
    const auto& phi = s[channel::phi];
    const auto& omega = s[channel::omega];
    const auto& cur = s[channel::current];
    for (std::size_t r = 0; r < s.rows(); ++r) {
      const double flag = s[channel::stick][r];
      ASSERT_TRUE(flag == 0.0 || flag == 1.0);
      if (flag == 1.0) {
        ASSERT_LE(std::abs(omega[r]), kOmegaEps) << "run " << run;
        ASSERT_EQ(s[channel::torque_net][r], 0.0) << "run " << run;
      } else {
        ASSERT_GE(s[channel::torque_friction][r] * omega[r], 0.0) << "run " << run;
      }
      if (free && r > 0) {
        const double e0 = stored_energy(p, phi[r - 1], omega[r - 1], cur[r - 1]);
        const double e1 = stored_energy(p, phi[r], omega[r], cur[r]);
        ASSERT_LE(e1, e0 * (1.0 + 1e-12) + 1e-18) << "run " << run << " row " << r;
      }
    }
  }
}

TEST(IntegrateFriction, CalibratedPlateauFollowsSlope) {
  ActuatorParams p = large_mirror();
  p.Tc = kCalibratedTc;
  const auto plateaus = friction_step_plateaus(p, {1.0, 2.0, 3.0, 4.0}, 1e-5, 3.0);
  for (std::size_t k = 0; k < plateaus.size(); ++k) {
    const double expected = 2.2026 * static_cast<double>(k + 1);
    EXPECT_NEAR(plateaus[k], expected, 0.02 * expected);
  }
}

TEST(IntegrateFriction, StickingPhasesOnlyAtStart) {
  ActuatorParams p = large_mirror();
  p.Tc = kCalibratedTc;
  const LinearModel m = build_model(p, 3);
  const TimeSeries s = integrate_friction(m, p, Vec::Zero(3), InputSignal::cosine(5.0, 15.708 / (2.0 * kPi)), 1e-5, 2.0);
  const auto& flag = s[channel::stick];
  int phases = 0;
  double last_stick = 0.0;
  for (std::size_t r = 0; r < s.rows(); ++r) {
    if (flag[r] == 1.0 && (r == 0 || flag[r - 1] == 0.0)) ++phases;
    if (flag[r] == 1.0) last_stick = s.time(r);
  }
  EXPECT_GE(phases, 1);
  EXPECT_LT(last_stick, 0.5);
}

TEST(InputSignal, Validation) {
  EXPECT_THROW(InputSignal::cosine(1.0, 0.0).validate(), Error);
  EXPECT_THROW(InputSignal::piecewise({0.0, 0.0}, {1.0, 2.0}).validate(), Error);
  EXPECT_DOUBLE_EQ(InputSignal::piecewise({0.0, 1.0}, {1.0, 2.0}).at(1.0), 2.0);
}
