#include "lidarscan/parallel.hpp"

#include <omp.h>

#include <exception>

namespace lidarscan {

namespace {

std::vector<double> plateau_row(const ActuatorParams& params, double tc,
                                const std::vector<double>& u0s, double dt, double duration) {
  ActuatorParams p = params;
  p.Tc = tc;
  return friction_step_plateaus(p, u0s, dt, duration);
}

// Exceptions must not cross an OpenMP region boundary; park them per slot
// and rethrow the first one afterwards so error order matches serial.
void rethrow_first(const std::vector<std::exception_ptr>& errors) {
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

namespace serial {

std::vector<BodePoint> bode_sweep(const LinearModel& model, const std::vector<double>& omegas) {
  std::vector<BodePoint> out(omegas.size());
  for (std::size_t k = 0; k < omegas.size(); ++k) out[k] = bode_point(model, omegas[k]);
  return out;
}

std::vector<std::vector<double>> friction_plateau_grid(const ActuatorParams& params,
                                                       const std::vector<double>& tcs,
                                                       const std::vector<double>& u0s, double dt,
                                                       double duration) {
  std::vector<std::vector<double>> out(tcs.size());
  for (std::size_t k = 0; k < tcs.size(); ++k) {
    out[k] = plateau_row(params, tcs[k], u0s, dt, duration);
  }
  return out;
}

std::vector<BangBangSolution> shoot_all(const TocProblem& problem,
                                        const std::vector<ShootingStart>& starts,
                                        int max_iterations) {
  std::vector<BangBangSolution> out(starts.size());
  for (std::size_t k = 0; k < starts.size(); ++k) {
    out[k] = shoot(problem, starts[k], max_iterations);
  }
  return out;
}

}  // namespace serial

namespace parallel {

int max_threads() { return omp_get_max_threads(); }

std::vector<BodePoint> bode_sweep(const LinearModel& model, const std::vector<double>& omegas) {
  const auto n = static_cast<std::ptrdiff_t>(omegas.size());
  std::vector<BodePoint> out(omegas.size());
  std::vector<std::exception_ptr> errors(omegas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[k] = bode_point(model, omegas[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

std::vector<std::vector<double>> friction_plateau_grid(const ActuatorParams& params,
                                                       const std::vector<double>& tcs,
                                                       const std::vector<double>& u0s, double dt,
                                                       double duration) {
  const auto n = static_cast<std::ptrdiff_t>(tcs.size());
  std::vector<std::vector<double>> out(tcs.size());
  std::vector<std::exception_ptr> errors(tcs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[k] = plateau_row(params, tcs[k], u0s, dt, duration);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

std::vector<BangBangSolution> shoot_all(const TocProblem& problem,
                                        const std::vector<ShootingStart>& starts,
                                        int max_iterations) {
  const auto n = static_cast<std::ptrdiff_t>(starts.size());
  std::vector<BangBangSolution> out(starts.size());
  std::vector<std::exception_ptr> errors(starts.size());
#pragma omp parallel for schedule(dynamic, 1) if (n > 1 && omp_get_max_threads() > 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      out[k] = shoot(problem, starts[k], max_iterations);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  rethrow_first(errors);
  return out;
}

}  // namespace parallel

}  // namespace lidarscan
