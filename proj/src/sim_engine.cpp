#include "lidarscan/sim_engine.hpp"

#include "lidarscan/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lidarscan {

// ---------------------------------------------------------------- inputs

InputSignal InputSignal::step_of(double amplitude) {
  InputSignal s;
  s.kind = InputKind::step;
  s.amplitude = amplitude;
  return s;
}

InputSignal InputSignal::cosine(double amplitude, double frequency_hz, double phase) {
  InputSignal s;
  s.kind = InputKind::sinusoid;
  s.amplitude = amplitude;
  s.frequency_hz = frequency_hz;
  s.phase = phase;
  return s;
}

InputSignal InputSignal::square_of(double amplitude, double frequency_hz) {
  InputSignal s;
  s.kind = InputKind::square;
  s.amplitude = amplitude;
  s.frequency_hz = frequency_hz;
  return s;
}

InputSignal InputSignal::piecewise(std::vector<double> starts, std::vector<double> values) {
  InputSignal s;
  s.kind = InputKind::piecewise_constant;
  s.breakpoints = std::move(starts);
  s.values = std::move(values);
  return s;
}

InputSignal InputSignal::sampled_of(double period, std::vector<double> values) {
  InputSignal s;
  s.kind = InputKind::sampled;
  s.breakpoints = {period};
  s.values = std::move(values);
  return s;
}

void InputSignal::validate() const {
  if ((kind == InputKind::sinusoid || kind == InputKind::square) && !(frequency_hz > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "periodic input needs frequency > 0");
  }
  if (kind == InputKind::piecewise_constant) {
    if (breakpoints.size() != values.size() || breakpoints.empty()) {
      throw Error(ErrorKind::invalid_argument, "piecewise input needs one value per breakpoint");
    }
    for (std::size_t k = 1; k < breakpoints.size(); ++k) {
      if (!(breakpoints[k] > breakpoints[k - 1])) {
        throw Error(ErrorKind::invalid_argument, "breakpoints must be strictly increasing");
      }
    }
  }
  if (kind == InputKind::sampled && (breakpoints.size() != 1 || !(breakpoints[0] > 0.0))) {
    throw Error(ErrorKind::invalid_argument, "sampled input needs a positive period");
  }
}

double InputSignal::at(double t) const {
  switch (kind) {
    case InputKind::step:
      return (t >= 0.0 ? amplitude : 0.0) + offset;
    case InputKind::sinusoid:
      return amplitude * std::cos(2.0 * kPi * frequency_hz * t + phase) + offset;
    case InputKind::square: {
      const double cycles = frequency_hz * t + phase / (2.0 * kPi);
      const double frac = cycles - std::floor(cycles);
      return (frac < 0.5 ? amplitude : -amplitude) + offset;
    }
    case InputKind::piecewise_constant: {
      const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
      if (it == breakpoints.begin()) return offset;
      return values[static_cast<std::size_t>(it - breakpoints.begin()) - 1] + offset;
    }
    case InputKind::sampled: {
      if (values.empty() || t < 0.0) return offset;
      // Small bias keeps t = k*period on the new sample despite rounding.
      auto k = static_cast<std::size_t>(std::floor(t / breakpoints[0] + 1e-9));
      k = std::min(k, values.size() - 1);
      return values[k] + offset;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------- series

TimeSeries::TimeSeries(double dt, double t0, std::vector<std::string> names)
    : dt_(dt), t0_(t0), names_(std::move(names)), columns_(names_.size()) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "time series needs dt > 0");
}

bool TimeSeries::has(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t TimeSeries::index(std::string_view name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorKind::invalid_argument, "no channel '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

const std::vector<double>& TimeSeries::operator[](std::string_view name) const {
  return columns_[index(name)];
}

std::vector<double>& TimeSeries::operator[](std::string_view name) { return columns_[index(name)]; }

void TimeSeries::reserve(std::size_t rows) {
  for (auto& c : columns_) c.reserve(rows);
}

void TimeSeries::push_row(const std::vector<double>& row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorKind::invalid_argument, "row width does not match channel count");
  }
  for (std::size_t i = 0; i < row.size(); ++i) columns_[i].push_back(row[i]);
}

void TimeSeries::add_channel(std::string name, std::vector<double> values) {
  if (!columns_.empty() && !names_.empty() && values.size() != rows()) {
    throw Error(ErrorKind::invalid_argument, "channel length does not match series");
  }
  names_.push_back(std::move(name));
  columns_.push_back(std::move(values));
}

std::vector<std::string> plant_channels() {
  return {std::string(channel::phi),           std::string(channel::omega),
          std::string(channel::current),       std::string(channel::input),
          std::string(channel::torque_linear), std::string(channel::torque_friction),
          std::string(channel::torque_net),    std::string(channel::stick)};
}

// ---------------------------------------------------------------- friction

FrictionTorque friction_torque(double omega, double T_RL, double Tc) {
  if (omega > kOmegaEps) return {Tc, false};
  if (omega < -kOmegaEps) return {-Tc, false};
  if (std::abs(T_RL) <= Tc) return {T_RL, true};
  return {std::copysign(Tc, T_RL), false};
}

double max_stable_step(const LinearModel& model) {
  double fastest = 0.0;
  for (const auto& l : polynomial_roots(characteristic_polynomial(model.A))) {
    fastest = std::max(fastest, std::abs(l));
  }
  if (fastest == 0.0) return std::numeric_limits<double>::infinity();
  return 0.1 / fastest;
}

namespace {

void check_step(const LinearModel& model, double dt, double duration) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be > 0");
  if (!(duration >= 0.0)) throw Error(ErrorKind::invalid_argument, "duration must be >= 0");
  const double limit = max_stable_step(model);
  if (dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorKind::step_too_large,
                "dt = " + std::to_string(dt) + " exceeds 0.1/|fastest eigenvalue| = " +
                    std::to_string(limit));
  }
}

std::size_t sample_count(double dt, double duration) {
  return static_cast<std::size_t>(std::floor(duration / dt + 1e-9)) + 1;
}

// Held inputs are frozen at their step-start value so breakpoints on the
// grid are honoured exactly; continuous inputs are sampled per RK4 stage.
struct StepInput {
  const InputSignal& input;
  double t_start;
  double operator()(double t) const { return input.at(input.held() ? t_start : t); }
};

}  // namespace

void record_plant_row(TimeSeries& series, const LinearModel& model, const Vec& x, double u,
                      const FrictionTorque* friction) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double phi = x(0);
  const double omega = model.order >= 2 ? x(1) : nan;
  double current = nan;
  double t_rl = nan;
  if (model.origin) {
    const ActuatorParams& p = *model.origin;
    current = model.order == 3 ? x(2) : (u - p.Kb * omega) / p.Rm;
    t_rl = p.Kt * current - p.c * phi - p.h * omega;
  }
  double t_cf = 0.0;
  double stick = 0.0;
  if (friction != nullptr) {
    t_cf = friction->T_CF;
    stick = friction->sticking ? 1.0 : 0.0;
  }
  const double values[] = {phi, omega, current, u, t_rl, t_cf, t_rl - t_cf, stick};
  const auto names = plant_channels();
  for (std::size_t k = 0; k < names.size(); ++k) series[names[k]].push_back(values[k]);
}

TimeSeries integrate_linear(const LinearModel& model, const Vec& x0, const InputSignal& input,
                            double dt, double duration) {
  check_step(model, dt, duration);
  input.validate();
  const std::size_t n = sample_count(dt, duration);
  TimeSeries out(dt, 0.0, plant_channels());
  out.reserve(n);
  Vec x = x0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = dt * static_cast<double>(k);
    record_plant_row(out, model, x, input.at(t), nullptr);
    if (k + 1 == n) break;
    const StepInput u{input, t};
    const Vec k1 = model.A * x + model.B * u(t);
    const Vec k2 = model.A * (x + 0.5 * dt * k1) + model.B * u(t + 0.5 * dt);
    const Vec k3 = model.A * (x + 0.5 * dt * k2) + model.B * u(t + 0.5 * dt);
    const Vec k4 = model.A * (x + dt * k3) + model.B * u(t + dt);
    x = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return out;
}

// ---------------------------------------------------------------- hybrid plant

FrictionPlant::FrictionPlant(const LinearModel& model, const ActuatorParams& params, const Vec& x0)
    : model_(model), params_(params), x_(x0) {
  if (model.order != 3) {
    throw Error(ErrorKind::unsupported_combination, "friction plant requires the third-order model");
  }
  params.validate();
  if (x_.size() != 3) throw Error(ErrorKind::invalid_argument, "friction plant state must have 3 entries");
  if (params_.Tc > 0.0 && std::abs(x_(1)) <= kOmegaEps) {
    sticking_ = friction_torque(0.0, linear_torque(), params_.Tc).sticking;
    if (sticking_) x_(1) = 0.0;
  }
}

double FrictionPlant::linear_torque() const {
  return params_.Kt * x_(2) - params_.c * x_(0) - params_.h * x_(1);
}

FrictionTorque FrictionPlant::friction() const {
  if (params_.Tc == 0.0) return {0.0, false};
  if (sticking_) return {linear_torque(), true};
  return friction_torque(x_(1), linear_torque(), params_.Tc);
}

Vec FrictionPlant::derivative(const Vec& x, double u, double direction) const {
  Vec dx = model_.A * x + model_.B * u;
  if (direction != 0.0) dx(1) -= direction * params_.Tc / params_.J;
  return dx;
}

double FrictionPlant::electrical_rate(double i, double u) const {
  return (u - params_.Rm * i) / params_.Lm;
}

void FrictionPlant::step_constant(double dt, double u) {
  step(0.0, dt, [u](double) { return u; });
}

TimeSeries integrate_friction(const LinearModel& model, const ActuatorParams& params,
                              const Vec& x0, const InputSignal& input, double dt,
                              double duration) {
  check_step(model, dt, duration);
  input.validate();
  FrictionPlant plant(model, params, x0);
  const std::size_t n = sample_count(dt, duration);
  TimeSeries out(dt, 0.0, plant_channels());
  out.reserve(n);
  LinearModel tagged = model;
  tagged.origin = params;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = dt * static_cast<double>(k);
    const FrictionTorque f = plant.friction();
    record_plant_row(out, tagged, plant.state(), input.at(t), &f);
    if (k + 1 == n) break;
    plant.step(t, dt, StepInput{input, t});
  }
  return out;
}

std::vector<double> friction_step_plateaus(const ActuatorParams& params,
                                           const std::vector<double>& u0s, double dt,
                                           double duration) {
  const LinearModel model = build_third_order(params);
  std::vector<double> out;
  out.reserve(u0s.size());
  for (double u0 : u0s) {
    const double bias = params.Tc * params.Rm / params.Kt;
    FrictionPlant plant(model, params, Vec::Zero(3));
    const auto steps = static_cast<std::size_t>(std::llround(duration / dt));
    for (std::size_t k = 0; k < steps; ++k) plant.step_constant(dt, bias + u0);
    out.push_back(rad_to_deg(plant.state()(0)));
  }
  return out;
}

FrictionCalibration calibrate_friction(const ActuatorParams& params,
                                       const std::vector<double>& u0s,
                                       double slope_deg_per_volt, double dt, double duration) {
  if (u0s.empty()) throw Error(ErrorKind::invalid_argument, "calibration needs at least one u0");
  auto residual = [&](const std::vector<double>& plateaus) {
    double ss = 0.0;
    for (std::size_t k = 0; k < u0s.size(); ++k) {
      const double e = plateaus[k] - slope_deg_per_volt * u0s[k];
      ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(u0s.size()));
  };

  // Above a threshold the plateaus stop depending on Tc, so the residual is
  // flat there. Return the smallest Tc whose residual ties the minimum,
  // located by bisection between the bracketing grid points.
  std::vector<double> grid;
  for (int k = 0; k <= 32; ++k) grid.push_back(1e-3 * std::pow(10.0, 2.5 * k / 32.0));
  const auto plateaus = parallel::friction_plateau_grid(params, grid, u0s, dt, duration);
  std::vector<double> scores(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) scores[k] = residual(plateaus[k]);
  const double best = *std::min_element(scores.begin(), scores.end());
  const double tie = best + 1e-3 * std::abs(slope_deg_per_volt);
  std::size_t first = 0;
  while (scores[first] > tie) ++first;
  double hi = grid[first];
  if (first > 0) {
    double lo = grid[first - 1];
    for (int it = 0; it < 30; ++it) {
      const double mid = std::sqrt(lo * hi);
      ActuatorParams p = params;
      p.Tc = mid;
      if (residual(friction_step_plateaus(p, u0s, dt, duration)) <= tie) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
  }
  FrictionCalibration out;
  out.Tc = hi;
  ActuatorParams p = params;
  p.Tc = out.Tc;
  out.plateaus_deg = friction_step_plateaus(p, u0s, dt, duration);
  out.rms_residual_deg = residual(out.plateaus_deg);
  return out;
}

}  // namespace lidarscan
