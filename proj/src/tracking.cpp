#include "lidarscan/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lidarscan {

namespace {

// Friction runs integrate at most this step between recorded samples.
constexpr double kFrictionStep = 1e-5;

bool is_multiple(double big, double small) {
  const double ratio = big / small;
  return std::abs(ratio - std::round(ratio)) < 1e-6 && std::round(ratio) >= 1.0;
}

double sign_of(double v, double fallback) {
  if (v > 0.0) return 1.0;
  if (v < 0.0) return -1.0;
  return fallback;
}

// Previous solution re-based one control period later.
std::optional<BangBangSolution> shifted(const BangBangSolution& s, double ts) {
  BangBangSolution out = s;
  double cut = ts;
  while (!out.intervals.empty() && out.intervals.front() <= cut) {
    cut -= out.intervals.front();
    out.intervals.erase(out.intervals.begin());
    out.initial_sign = -out.initial_sign;
  }
  if (out.intervals.empty()) return std::nullopt;
  out.intervals.front() -= cut;
  return out;
}

}  // namespace

TargetMode parse_target_mode(const std::string& name) {
  if (name == "position_only") return TargetMode::position_only;
  if (name == "position_velocity") return TargetMode::position_velocity;
  throw Error(ErrorKind::invalid_argument, "unknown target mode '" + name + "'");
}

const char* to_string(TargetMode mode) {
  return mode == TargetMode::position_only ? "position_only" : "position_velocity";
}

void ControllerConfig::validate() const {
  if (!(u0 > 0.0)) throw Error(ErrorKind::invalid_argument, "u0 must be > 0");
  if (!(ts_control > 0.0)) throw Error(ErrorKind::invalid_argument, "ts_control must be > 0");
  if (!is_multiple(ts_demand, ts_control)) {
    throw Error(ErrorKind::invalid_argument, "ts_demand must be an integer multiple of ts_control");
  }
}

DemandKind parse_demand_kind(const std::string& name) {
  if (name == "constant") return DemandKind::constant;
  if (name == "square") return DemandKind::square;
  if (name == "sinusoid" || name == "sine") return DemandKind::sinusoid;
  throw Error(ErrorKind::invalid_argument, "unknown demand kind '" + name + "'");
}

const char* to_string(DemandKind kind) {
  switch (kind) {
    case DemandKind::constant:
      return "constant";
    case DemandKind::square:
      return "square";
    case DemandKind::sinusoid:
      return "sinusoid";
  }
  return "?";
}

DemandSignal DemandSignal::constant_of(double angle) {
  DemandSignal d;
  d.kind = DemandKind::constant;
  d.amplitude = angle;
  return d;
}

DemandSignal DemandSignal::sine(double amplitude, double frequency_hz, double phase) {
  DemandSignal d;
  d.kind = DemandKind::sinusoid;
  d.amplitude = amplitude;
  d.frequency_hz = frequency_hz;
  d.phase = phase;
  return d;
}

DemandSignal DemandSignal::square_of(double amplitude, double frequency_hz) {
  DemandSignal d;
  d.kind = DemandKind::square;
  d.amplitude = amplitude;
  d.frequency_hz = frequency_hz;
  return d;
}

void DemandSignal::validate() const {
  if (kind != DemandKind::constant && !(frequency_hz > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "periodic demand needs frequency > 0");
  }
}

double DemandSignal::value(double t, double shift) const {
  switch (kind) {
    case DemandKind::constant:
      return amplitude;
    case DemandKind::sinusoid:
      return amplitude * std::sin(2.0 * kPi * frequency_hz * t + phase + shift);
    case DemandKind::square: {
      const double cycles = frequency_hz * t + (phase + shift) / (2.0 * kPi);
      return cycles - std::floor(cycles) < 0.5 ? amplitude : -amplitude;
    }
  }
  return 0.0;
}

double DemandSignal::rate(double t, double shift) const {
  if (kind != DemandKind::sinusoid) return 0.0;
  const double w = 2.0 * kPi * frequency_hz;
  return amplitude * w * std::cos(w * t + phase + shift);
}

void PlantSpec::validate() const {
  params.validate();
  if (order != 2 && order != 3) throw Error(ErrorKind::invalid_argument, "plant order must be 2 or 3");
  if (friction && order != 3) {
    throw Error(ErrorKind::unsupported_combination, "friction plant requires order 3");
  }
}

double record_step(const ControllerConfig& config) { return std::min(config.ts_control, 1e-4); }

TrackingResult run_tracking(const PlantSpec& plant, const ControllerConfig& config,
                            const DemandSignal& demand, double duration) {
  plant.validate();
  config.validate();
  demand.validate();
  if (!(duration >= 0.0)) throw Error(ErrorKind::invalid_argument, "duration must be >= 0");

  ActuatorParams linear_params = plant.params;
  linear_params.Tc = 0.0;
  const LinearModel model = build_model(linear_params, plant.order);
  const int n = plant.order;
  const double ts = config.ts_control;
  const double rec = record_step(config);
  const auto per_control = static_cast<std::size_t>(std::llround(ts / rec));
  const auto rows = static_cast<std::size_t>(std::floor(duration / rec + 1e-9)) + 1;
  const auto inner = static_cast<std::size_t>(std::ceil(rec / kFrictionStep - 1e-9));

  TocProblem problem;
  problem.model = model;
  problem.u0 = config.u0;
  problem.accuracy = config.accuracy.size() == n ? config.accuracy : default_accuracy(n);
  problem.xf = Vec::Zero(n);
  SolveOptions options;
  options.parallel = false;
  options.first_converged = true;

  LinearModel recorded = model;
  recorded.origin = plant.params;
  const Propagator hold_control(model, ts);
  const Propagator hold_record(model, rec);
  std::optional<FrictionPlant> friction;
  if (plant.friction) friction.emplace(model, plant.params, Vec::Zero(n));
  Vec x = Vec::Zero(n);

  TrackingResult result;
  std::vector<std::string> names = plant_channels();
  names.emplace_back(channel::demand);
  names.emplace_back(channel::solver_ok);
  names.emplace_back(channel::intervals);
  result.series = TimeSeries(rec, 0.0, names);
  result.series.reserve(rows);

  auto held_demand = [&](double t) {
    const double td = std::floor(t / config.ts_demand + 1e-9) * config.ts_demand;
    return std::pair{demand.value(td, config.phase_shift), demand.rate(td, config.phase_shift)};
  };

  std::optional<BangBangSolution> previous;
  bool last_ok = true;
  double last_count = 0.0;
  // Solves from state xs toward the demand held at time t; returns the sign
  // of the first bang, or the relay / hold fallbacks.
  auto decide = [&](const Vec& xs, double t, double held_sign) {
    const auto [phi_d, rate_d] = held_demand(t);
    problem.x0 = xs;
    problem.xf(0) = phi_d;
    if (n >= 2) {
      problem.xf(1) = config.target_mode == TargetMode::position_velocity ? rate_d : 0.0;
    }
    options.warm_start = previous ? shifted(*previous, ts) : std::nullopt;
    const BangBangSolution s = solve(problem, options);
    ++result.solves;
    last_ok = s.converged;
    last_count = static_cast<double>(s.intervals.size());
    if (!s.converged) {
      ++result.solver_failures;
      previous.reset();
      return held_sign;
    }
    if (s.intervals.empty()) {
      previous.reset();
      const double vel_err = n >= 2 ? xs(1) - problem.xf(1) : 0.0;
      return sign_of(-vel_err, held_sign);
    }
    previous = s;
    return static_cast<double>(s.initial_sign);
  };

  // The first bang is applied immediately; afterwards each decision acts
  // one control period after the measurement it was computed from.
  double u = config.u0 * decide(x, 0.0, 1.0);
  std::size_t row = 0;
  for (std::size_t k = 0; row < rows; ++k) {
    const double tk = static_cast<double>(k) * ts;
    const Vec predicted = config.prediction ? hold_control(x, u) : x;
    const double u_next = config.u0 * decide(predicted, tk, u > 0.0 ? 1.0 : -1.0);
    for (std::size_t j = 0; j < per_control && row < rows; ++j, ++row) {
      const double t = static_cast<double>(row) * rec;
      FrictionTorque f{};
      if (friction) {
        f = friction->friction();
        x = friction->state();
      }
      record_plant_row(result.series, recorded, x, u, plant.friction ? &f : nullptr);
      auto& s = result.series;
      s[channel::demand].push_back(held_demand(t).first);
      s[channel::solver_ok].push_back(last_ok ? 1.0 : 0.0);
      s[channel::intervals].push_back(last_count);
      if (friction) {
        for (std::size_t m = 0; m < inner; ++m) friction->step_constant(rec / inner, u);
        x = friction->state();
      } else {
        x = hold_record(x, u);
      }
    }
    u = u_next;
  }

  // Steady-state figures over the second half of the run.
  const auto& phi = result.series[channel::phi];
  const auto& dem = result.series[channel::demand];
  const std::size_t first = rows / 2;
  result.steady_start = static_cast<double>(first) * rec;
  for (std::size_t i = first; i < rows; ++i) {
    result.tracking_error_max = std::max(result.tracking_error_max, std::abs(phi[i] - dem[i]));
  }
  if (demand.kind == DemandKind::constant) {
    result.accuracy_achieved = result.tracking_error_max;
  } else {
    const double period = 1.0 / demand.frequency_hz;
    const auto span = static_cast<std::size_t>(std::llround(period / rec));
    const double amp = std::abs(demand.amplitude);
    for (std::size_t a = first; a + span <= rows; a += span) {
      const auto [lo, hi] = std::minmax_element(phi.begin() + a, phi.begin() + a + span);
      result.accuracy_achieved =
          std::max({result.accuracy_achieved, std::abs(*hi - amp), std::abs(*lo + amp)});
    }
  }

  // Transition: start of the first stretch that stays steady to the end.
  // Constant demands: error inside the band; periodic: output repeats
  // itself one period later within the band.
  const double band = std::max(0.05 * std::abs(demand.amplitude), deg_to_rad(0.01));
  result.transition_time = std::numeric_limits<double>::quiet_NaN();
  if (demand.kind == DemandKind::constant) {
    std::size_t i = rows;
    while (i > 0 && std::abs(phi[i - 1] - dem[i - 1]) <= band) --i;
    if (i < rows) result.transition_time = static_cast<double>(i) * rec;
  } else {
    const auto span = static_cast<std::size_t>(std::llround(1.0 / demand.frequency_hz / rec));
    if (span < rows) {
      std::size_t i = rows;
      while (i > span && std::abs(phi[i - 1] - phi[i - 1 - span]) <= band) --i;
      if (i < rows) result.transition_time = static_cast<double>(i - span) * rec;
    }
  }
  return result;
}

RunComparison compare_runs(const TrackingResult& a, const TrackingResult& b) {
  if (a.series.rows() != b.series.rows() || std::abs(a.series.dt() - b.series.dt()) > 1e-15) {
    throw Error(ErrorKind::mismatched_grids, "runs differ in dt or duration");
  }
  RunComparison out;
  const auto& pa = a.series[channel::phi];
  const auto& pb = b.series[channel::phi];
  out.difference.resize(pa.size());
  const std::size_t first = pa.size() / 2;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    out.difference[i] = pa[i] - pb[i];
    out.max_abs = std::max(out.max_abs, std::abs(out.difference[i]));
    if (i >= first) out.steady_max_abs = std::max(out.steady_max_abs, std::abs(out.difference[i]));
  }
  return out;
}

double fundamental_phase(const TrackingResult& result, const DemandSignal& demand) {
  if (demand.kind != DemandKind::sinusoid) {
    throw Error(ErrorKind::invalid_argument, "phase delay needs a sinusoidal demand");
  }
  const double period = 1.0 / demand.frequency_hz;
  const double rec = result.series.dt();
  const std::size_t rows = result.series.rows();
  const double end = static_cast<double>(rows) * rec;
  const double steady_from = std::max(result.transition_time, 0.0);
  if (std::isnan(result.transition_time)) {
    throw Error(ErrorKind::not_steady, "tracking never settles");
  }
  const auto periods = static_cast<std::size_t>(std::floor((end - steady_from) / period + 1e-9));
  if (periods < 1) throw Error(ErrorKind::not_steady, "less than one steady period recorded");
  const auto span = static_cast<std::size_t>(std::llround(period / rec));
  const std::size_t first = rows - periods * span;
  const auto& phi = result.series[channel::phi];
  const double w = 2.0 * kPi * demand.frequency_hz;
  double s = 0.0;
  double c = 0.0;
  for (std::size_t i = first; i < rows; ++i) {
    const double arg = w * static_cast<double>(i) * rec + demand.phase;
    s += phi[i] * std::sin(arg);
    c += phi[i] * std::cos(arg);
  }
  return std::atan2(c, s) * (demand.amplitude < 0.0 ? -1.0 : 1.0);
}

double measure_phase_delay(const PlantSpec& plant, const ControllerConfig& config,
                           const DemandSignal& demand, double duration) {
  return fundamental_phase(run_tracking(plant, config, demand, duration), demand);
}

}  // namespace lidarscan
