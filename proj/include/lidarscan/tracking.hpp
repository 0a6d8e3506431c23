#pragma once

// Digital tracking loop that re-solves the time-optimal problem every
// control sample and applies the first bang of the solution.

#include "lidarscan/toc_solver.hpp"

#include <string>

namespace lidarscan {

enum class TargetMode { position_only, position_velocity };

TargetMode parse_target_mode(const std::string& name);
const char* to_string(TargetMode mode);

struct ControllerConfig {
  double u0 = 20.0;          // V
  double ts_control = 1e-3;  // s
  double ts_demand = 1e-3;   // s, integer multiple of ts_control
  bool prediction = true;
  TargetMode target_mode = TargetMode::position_only;
  double phase_shift = 0.0;  // rad, added to periodic demands
  Vec accuracy;              // empty: solver defaults for the model order

  void validate() const;
};

enum class DemandKind { constant, square, sinusoid };

DemandKind parse_demand_kind(const std::string& name);
const char* to_string(DemandKind kind);

/// Angle demand in radians. Square waves are 50% duty and start high.
struct DemandSignal {
  DemandKind kind = DemandKind::constant;
  double amplitude = 0.0;  // rad
  double frequency_hz = 0.0;
  double phase = 0.0;  // rad

  static DemandSignal constant_of(double angle);
  static DemandSignal sine(double amplitude, double frequency_hz, double phase = 0.0);
  static DemandSignal square_of(double amplitude, double frequency_hz);

  void validate() const;
  double value(double t, double shift = 0.0) const;
  double rate(double t, double shift = 0.0) const;
};

/// Plant driven by the loop. The controller always uses the linear model of
/// the given order; friction adds Coulomb friction to the simulated plant.
struct PlantSpec {
  ActuatorParams params;
  int order = 3;
  bool friction = false;

  void validate() const;
};

namespace channel {
inline constexpr std::string_view demand = "phi_demand_rad";
inline constexpr std::string_view solver_ok = "solver_converged";
inline constexpr std::string_view intervals = "solver_intervals";
}  // namespace channel

struct TrackingResult {
  /// Plant channels plus the held demand, solver flag and interval count,
  /// sampled every record_dt.
  TimeSeries series;
  /// Worst deviation of the output from the demand amplitude over the
  /// steady window: per demand period, the output maximum against
  /// +amplitude and minimum against -amplitude; for a constant demand,
  /// max |phi - demand|.
  double accuracy_achieved = 0.0;
  /// Max |phi - demand| over the steady window, demand unshifted.
  double tracking_error_max = 0.0;
  /// First time after which the loop stays steady; NaN if it never does.
  double transition_time = 0.0;
  double steady_start = 0.0;  // s
  std::size_t solves = 0;
  std::size_t solver_failures = 0;
};

/// Recording step used by run_tracking: ts_control, capped at 0.1 ms.
double record_step(const ControllerConfig& config);

TrackingResult run_tracking(const PlantSpec& plant, const ControllerConfig& config,
                            const DemandSignal& demand, double duration);

struct RunComparison {
  std::vector<double> difference;  // rad, a - b per row
  double max_abs = 0.0;
  double steady_max_abs = 0.0;  // over the last half
};

RunComparison compare_runs(const TrackingResult& a, const TrackingResult& b);

/// Phase (rad) of the steady output fundamental relative to the unshifted
/// demand; negative means the output lags.
double measure_phase_delay(const PlantSpec& plant, const ControllerConfig& config,
                           const DemandSignal& demand, double duration);

/// Phase of the fundamental at frequency_hz of channel phi over the steady
/// part of a finished run, relative to the unshifted demand.
double fundamental_phase(const TrackingResult& result, const DemandSignal& demand);

}  // namespace lidarscan
