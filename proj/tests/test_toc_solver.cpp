#include "lidarscan/golden.hpp"
#include "lidarscan/toc_solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lidarscan;

namespace {

TocProblem golden_problem(const TocGolden& g, double u0) {
  const ActuatorParams p = apply_correction(g.large ? large_mirror() : small_mirror(), g.correction);
  return make_problem(build_model(p, g.order), g.target_deg, u0);
}

/// Chains RK4 runs over each bang with dt <= 1e-7 s.
Vec rk4_replay(const TocProblem& problem, const BangBangSolution& s) {
  Vec x = problem.x0;
  for (std::size_t k = 0; k < s.intervals.size(); ++k) {
    const double tau = s.intervals[k];
    if (tau <= 0.0) continue;
    const double steps = std::ceil(tau / 1e-7);
    const TimeSeries ts = integrate_linear(problem.model, x, InputSignal::step_of(s.control(k)), tau / steps, tau);
    const std::size_t last = ts.rows() - 1;
    x(0) = ts[channel::phi][last];
    x(1) = ts[channel::omega][last];
    if (problem.model.order == 3) x(2) = ts[channel::current][last];
  }
  return x;
}

BangBangSolution candidate(bool converged, double total, std::size_t n) {
  BangBangSolution s;
  s.converged = converged;
  s.total_time = total;
  s.intervals.assign(n, total / static_cast<double>(n));
  return s;
}

}  // namespace

TEST(TocGoldens, ReproduceTablesAndPassCertificate) {
  for (const auto& g : toc_goldens()) {
    const TocProblem problem = golden_problem(g, g.u0);
    const BangBangSolution s = solve(problem);
    ASSERT_TRUE(s.converged) << g.id;
    ASSERT_EQ(s.intervals.size(), g.intervals.size()) << g.id;
    for (std::size_t k = 0; k < s.intervals.size(); ++k) {
      EXPECT_NEAR(s.intervals[k], g.intervals[k], kTocTolerance) << g.id << " interval " << k;
    }
    EXPECT_NEAR(s.total_time, g.total_time, kTocTolerance) << g.id;
    const PmpCertificate c = certify(problem, s);
    EXPECT_TRUE(c.sign_match) << g.id;
  }
}

TEST(TocSolver, TerminalFidelityUnderRk4Replay) {
  for (const auto& g : toc_goldens()) {
    const TocProblem problem = golden_problem(g, g.u0);
    const BangBangSolution s = solve(problem);
    ASSERT_TRUE(s.converged) << g.id;
    const Vec err = rk4_replay(problem, s) - problem.xf;
    for (int k = 0; k < err.size(); ++k) {
      EXPECT_LE(std::abs(err(k)), 10.0 * problem.accuracy(k)) << g.id << " component " << k;
    }
  }
}

TEST(TocSolver, BangBangAlternation) {
  for (const auto& g : toc_goldens()) {
    const BangBangSolution s = solve(golden_problem(g, g.u0));
    for (std::size_t k = 0; k < s.intervals.size(); ++k) {
      EXPECT_LE(s.intervals[k], s.total_time);
      EXPECT_GE(s.intervals[k], 0.0);
      EXPECT_EQ(std::abs(s.control(k)), s.u0);
      if (k > 0) EXPECT_EQ(s.control(k), -s.control(k - 1)) << g.id;
    }
    EXPECT_LE(s.intervals.size(), static_cast<std::size_t>(g.order));
  }
}

TEST(TocSolver, TotalTimeDecreasesWithAuthority) {
  for (const auto& g : toc_goldens()) {
    const BangBangSolution low = solve(golden_problem(g, 10.0));
    const BangBangSolution high = solve(golden_problem(g, 20.0));
    ASSERT_TRUE(low.converged && high.converged) << g.id;
    EXPECT_LT(high.total_time, low.total_time) << g.id;
  }
}

TEST(TocSolver, LongerMoveNeverFaster) {
  for (const auto& g : toc_goldens()) {
    TocGolden twice = g;
    twice.target_deg *= 2.0;
    const TocProblem p = golden_problem(twice, g.u0);
    const double hold_limit = p.model.origin->c > 0.0 ? rad_to_deg(dc_gain(p.model) * g.u0) : INFINITY;
    if (twice.target_deg >= hold_limit) {
      EXPECT_THROW(reach_time(p), Error) << g.id;
      continue;
    }
    const double t1 = reach_time(golden_problem(g, g.u0));
    const double t2 = reach_time(golden_problem(twice, g.u0));
    EXPECT_GE(t2, t1) << g.id;
  }
}

TEST(TocSolver, RepeatedSolvesAreByteIdentical) {
  for (const auto& g : toc_goldens()) {
    const TocProblem problem = golden_problem(g, g.u0);
    const std::string first = to_json(solve(problem));
    for (int r = 0; r < 3; ++r) EXPECT_EQ(to_json(solve(problem)), first) << g.id;
    SolveOptions serial;
    serial.parallel = false;
    EXPECT_EQ(to_json(solve(problem, serial)), first) << g.id;
  }
}

TEST(TocSolver, AtTargetIsZeroTime) {
  const LinearModel m = build_model(apply_correction(large_mirror(), Correction::zero_pivot_stiffness), 3);
  const TocProblem p = make_problem(m, 0.0, 20.0);
  const BangBangSolution s = solve(p);
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.total_time, 0.0);
  EXPECT_TRUE(s.intervals.empty());
}

TEST(TocSolver, ReachTimeReferenceValues) {
  const LinearModel large = build_model(apply_correction(large_mirror(), Correction::zero_pivot_stiffness), 3);
  EXPECT_NEAR(reach_time(make_problem(large, 8.35, 20.0)), 0.062511, kTocTolerance);
}

TEST(TocSolver, PropagateSolutionLandsOnTarget) {
  const auto g = toc_goldens().front();
  const TocProblem p = golden_problem(g, g.u0);
  const BangBangSolution s = solve(p);
  const Vec x = propagate_solution(p.model, p.x0, s);
  for (int k = 0; k < x.size(); ++k) EXPECT_LE(std::abs(x(k) - p.xf(k)), p.accuracy(k));
}

TEST(TocSolver, JsonRoundTrip) {
  const auto g = toc_goldens().back();
  const BangBangSolution s = solve(golden_problem(g, g.u0));
  const std::string text = to_json(s);
  const BangBangSolution back = solution_from_json(text);
  EXPECT_EQ(back.initial_sign, s.initial_sign);
  EXPECT_EQ(back.intervals, s.intervals);
  EXPECT_EQ(back.total_time, s.total_time);
  EXPECT_EQ(back.converged, s.converged);
  EXPECT_EQ(to_json(back), text);
  for (const char* key : {"initial_sign", "intervals_s", "total_time_s", "terminal_error", "converged"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

TEST(TocSolver, SelectionRule) {
  EXPECT_EQ(select_candidate({candidate(false, 0.01, 2), candidate(true, 0.05, 3)}), 1u);
  EXPECT_EQ(select_candidate({candidate(true, 0.05, 3), candidate(true, 0.04, 3)}), 1u);
  EXPECT_EQ(select_candidate({candidate(true, 0.05, 3), candidate(true, 0.05 + 1e-10, 2)}), 1u);
  EXPECT_EQ(select_candidate({candidate(true, 0.05, 2), candidate(true, 0.05, 2)}), 0u);
}

TEST(TocSolver, StartLadderCoversBothSigns) {
  const auto g = toc_goldens().front();
  const auto starts = start_ladder(golden_problem(g, g.u0), false);
  ASSERT_FALSE(starts.empty());
  bool plus = false;
  bool minus = false;
  for (const auto& s : starts) {
    plus = plus || s.sign > 0;
    minus = minus || s.sign < 0;
    for (double t : s.intervals) EXPECT_GT(t, 0.0);
  }
  EXPECT_TRUE(plus && minus);
}

TEST(TocSolver, UnreachableTargetReported) {
  const LinearModel m = build_model(apply_correction(large_mirror(), Correction::damping_x10), 3);
  try {
    reach_time(make_problem(m, 20.0, 10.0));
    FAIL() << "expected no_convergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::no_convergence);
  }
}

TEST(TocSolver, InvalidProblemsRejected) {
  const LinearModel m = build_model(large_mirror(), 3);
  EXPECT_THROW(make_problem(m, 1.0, 0.0).validate(), Error);
  EXPECT_THROW(make_problem(m, 1.0, -5.0).validate(), Error);
}
