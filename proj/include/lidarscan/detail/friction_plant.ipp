#pragma once

#include <algorithm>
#include <cmath>

namespace lidarscan {

template <class InputFn>
void FrictionPlant::step(double t, double dt, const InputFn& u) {
  if (params_.Tc == 0.0) {
    // Frictionless: identical arithmetic to the linear integrator.
    slide(t, dt, u, 0.0, 0);
    return;
  }
  if (sticking_) {
    stick(t, dt, u);
    return;
  }
  double direction = (x_(1) > kOmegaEps) ? 1.0 : (x_(1) < -kOmegaEps ? -1.0 : 0.0);
  if (direction == 0.0) {
    const FrictionTorque f = friction_torque(0.0, linear_torque(), params_.Tc);
    if (f.sticking) {
      sticking_ = true;
      x_(1) = 0.0;
      stick(t, dt, u);
      return;
    }
    direction = linear_torque() > 0.0 ? 1.0 : -1.0;
  }
  slide(t, dt, u, direction, 0);
}

template <class InputFn>
void FrictionPlant::slide(double t, double dt, const InputFn& u, double direction, int depth) {
  auto rk4 = [&](const Vec& x0, double h) {
    const Vec k1 = derivative(x0, u(t), direction);
    const Vec k2 = derivative(x0 + 0.5 * h * k1, u(t + 0.5 * h), direction);
    const Vec k3 = derivative(x0 + 0.5 * h * k2, u(t + 0.5 * h), direction);
    const Vec k4 = derivative(x0 + h * k3, u(t + h), direction);
    return Vec(x0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  };
  const Vec start = x_;
  Vec next = rk4(start, dt);
  if (direction == 0.0 || next(1) * direction > kOmegaEps || depth >= 4) {
    x_ = next;
    return;
  }
  // Velocity reached or crossed zero inside the step: locate the crossing by
  // linear interpolation, re-anchor there with omega = 0, then run the stick
  // test for the remainder of the step.
  const double w0 = start(1);
  const double w1 = next(1);
  double theta = (w0 - w1) != 0.0 ? w0 / (w0 - w1) : 1.0;
  theta = std::clamp(theta, 0.0, 1.0);
  const double h1 = theta * dt;
  x_ = h1 > 0.0 ? rk4(start, h1) : start;
  x_(1) = 0.0;
  const double rest = dt - h1;
  const FrictionTorque f = friction_torque(0.0, linear_torque(), params_.Tc);
  if (f.sticking) {
    sticking_ = true;
    if (rest > 0.0) stick(t + h1, rest, u);
    return;
  }
  if (rest > 0.0) slide(t + h1, rest, u, linear_torque() > 0.0 ? 1.0 : -1.0, depth + 1);
}

template <class InputFn>
void FrictionPlant::stick(double t, double dt, const InputFn& u) {
  // Mechanically locked: phi frozen, omega = 0; the winding keeps evolving.
  const double i0 = x_(2);
  const double k1 = electrical_rate(i0, u(t));
  const double k2 = electrical_rate(i0 + 0.5 * dt * k1, u(t + 0.5 * dt));
  const double k3 = electrical_rate(i0 + 0.5 * dt * k2, u(t + 0.5 * dt));
  const double k4 = electrical_rate(i0 + dt * k3, u(t + dt));
  x_(2) = i0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  x_(1) = 0.0;
  if (std::abs(linear_torque()) > params_.Tc) sticking_ = false;
}

}  // namespace lidarscan
