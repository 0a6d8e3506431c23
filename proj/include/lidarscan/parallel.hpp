#pragma once

// Embarrassingly parallel kernels. Each has a serial twin with the same
// signature; both produce bit-identical results because every work item is
// computed independently and written to its own slot.

#include "lidarscan/toc_solver.hpp"

#include <vector>

namespace lidarscan {

namespace serial {

std::vector<BodePoint> bode_sweep(const LinearModel& model, const std::vector<double>& omegas);

/// plateaus[i][j]: friction step plateau (deg) for Tc = tcs[i], u0 = u0s[j].
std::vector<std::vector<double>> friction_plateau_grid(const ActuatorParams& params,
                                                       const std::vector<double>& tcs,
                                                       const std::vector<double>& u0s, double dt,
                                                       double duration);

std::vector<BangBangSolution> shoot_all(const TocProblem& problem,
                                        const std::vector<ShootingStart>& starts,
                                        int max_iterations);

}  // namespace serial

namespace parallel {

/// Worker threads OpenMP would use for the kernels below.
int max_threads();

std::vector<BodePoint> bode_sweep(const LinearModel& model, const std::vector<double>& omegas);

std::vector<std::vector<double>> friction_plateau_grid(const ActuatorParams& params,
                                                       const std::vector<double>& tcs,
                                                       const std::vector<double>& u0s, double dt,
                                                       double duration);

std::vector<BangBangSolution> shoot_all(const TocProblem& problem,
                                        const std::vector<ShootingStart>& starts,
                                        int max_iterations);

}  // namespace parallel

}  // namespace lidarscan
