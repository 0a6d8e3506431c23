#pragma once

// Beam position on a vertical plane at range from the two mirror angles,
// ideal and tracked scan patterns cut into passes, and the fit of the
// mirror separation against tabulated scan data.

#include "lidarscan/tracking.hpp"

#include <utility>
#include <vector>

namespace lidarscan {

/// Mirror separation that best reproduces the reference ideal scan table.
inline constexpr double kCalibratedSeparation = 0.3163;

struct ScanConfig {
  double range_m = 200.0;
  double mirror_separation_m = kCalibratedSeparation;
  double sample_period = 0.004;  // s
  double pass_duration = 0.2;    // s, half the large-mirror period
  double amplitude_lm = deg_to_rad(8.35);
  double amplitude_sm = deg_to_rad(3.57);
  double frequency_lm = 2.5;   // Hz
  double frequency_sm = 20.0;  // Hz

  void validate() const;
};

struct ScanSample {
  double t = 0.0;       // s
  double phi_lm = 0.0;  // deg
  double phi_sm = 0.0;  // deg
  double x = 0.0;       // m, horizontal
  double y = 0.0;       // m, vertical
};

enum class Parity { odd, even };

const char* to_string(Parity parity);

struct Pass {
  int index = 0;  // 1-based
  Parity parity = Parity::odd;
  std::vector<ScanSample> samples;
};

struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Angles in radians. Each mirror doubles its angle in the beam; the
/// vertical deflection acts over the slant path plus the mirror separation.
/// Throws out_of_range when a doubled angle reaches +-90 degrees.
PlanePoint angles_to_plane(double phi_lm, double phi_sm, const ScanConfig& config);

struct SeparationFit {
  double separation_m = 0.0;
  double rms_m = 0.0;  // residual RMS on the vertical coordinate
};

/// Least-squares separation from samples carrying angles (deg) and y (m).
SeparationFit calibrate_separation(const std::vector<ScanSample>& table, double range_m);

/// Ideal mirror angles (rad): cosine on the large mirror, negative sine on
/// the small one.
std::pair<double, double> ideal_angles(double t, const ScanConfig& config);

/// Samples every sample_period over [0, duration], cut into passes of
/// pass_duration. A final sample on a pass boundary closes the last pass.
std::vector<Pass> generate_ideal_scan(const ScanConfig& config, double duration);

/// Same sampling, with angles read from two finished tracking runs.
std::vector<Pass> generate_tracked_scan(const TrackingResult& large, const TrackingResult& small,
                                        const ScanConfig& config, double duration);

std::vector<ScanSample> flatten(const std::vector<Pass>& passes);

}  // namespace lidarscan
