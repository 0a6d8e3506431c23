#pragma once

// Near time-optimal bang-bang control for single-input LTI models: shooting
// over interval lengths with Levenberg-Marquardt, plus a maximum-principle
// certificate for the returned switching structure.

#include "lidarscan/sim_engine.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lidarscan {

struct TocProblem {
  LinearModel model;
  Vec x0;
  Vec xf;
  double u0 = 0.0;  // V, control bounded to [-u0, u0]
  Vec accuracy;     // per-component terminal tolerance (rad, rad/s, A)

  void validate() const;
  /// Complex eigenvalues: still solved, but without an optimality claim.
  bool has_complex_modes() const;
};

/// 1e-7 deg, 2e-5 deg/s, 1e-5 A (truncated to the model order).
Vec default_accuracy(int order);

TocProblem make_problem(const LinearModel& model, double target_deg, double u0);

struct BangBangSolution {
  int initial_sign = 1;
  std::vector<double> intervals;  // s
  double u0 = 0.0;
  double total_time = 0.0;
  Vec terminal_error;  // x(tf) - xf
  bool converged = false;

  /// Control value on interval k: initial_sign * (-1)^k * u0.
  double control(std::size_t k) const;
  /// Control at time t (right-continuous at switches); 0 past the end.
  double control_at(double t) const;
};

/// Chains exact constant-input segments; returns x at the end.
Vec propagate_solution(const LinearModel& model, const Vec& x0, const BangBangSolution& s);

struct SolveOptions {
  /// Tried before the multi-start ladder; accepted outright if it converges.
  std::optional<BangBangSolution> warm_start;
  int max_iterations = 200;
  bool parallel = true;
  /// Return the first converged ladder candidate instead of comparing all.
  /// Only honoured for real eigenvalues, where the converged bang-bang
  /// extremal with at most n intervals is unique.
  bool first_converged = false;
};

/// One shooting run: a sign and starting interval lengths.
struct ShootingStart {
  int sign = 1;
  std::vector<double> intervals;
};

/// Levenberg-Marquardt from one start. Deterministic.
BangBangSolution shoot(const TocProblem& problem, const ShootingStart& start, int max_iterations);

/// The full multi-start ladder used by solve, in evaluation order.
std::vector<ShootingStart> start_ladder(const TocProblem& problem, bool extended);

/// Picks the winner among candidates: converged first, then strictly
/// shorter total time, ties within 1e-9 s to fewer intervals, then index.
std::size_t select_candidate(const std::vector<BangBangSolution>& candidates);

BangBangSolution solve(const TocProblem& problem, const SolveOptions& options = {});

/// Minimum time of solve(problem); throws Error{no_convergence} when the
/// solver finds no solution, e.g. a stiff actuator asked to hold more than
/// its static authority.
double reach_time(const TocProblem& problem);

struct PmpCertificate {
  Vec psi0;
  std::vector<double> switch_residuals;
  bool sign_match = false;
  double M_value = 0.0;
};

PmpCertificate certify(const TocProblem& problem, const BangBangSolution& solution);

/// {initial_sign, intervals_s[], total_time_s, terminal_error[], converged}
std::string to_json(const BangBangSolution& solution);
std::string to_json(const PmpCertificate& certificate);
BangBangSolution solution_from_json(const std::string& text);

}  // namespace lidarscan
