#pragma once

// Run configuration: a flat key=value file with dot-namespaced keys.
// Command-line flags are applied through the same setters, after the file.

#include "lidarscan/scan_geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lidarscan {

enum class PlantKind { linear2, linear3, friction3 };

PlantKind parse_plant_kind(const std::string& name);
const char* to_string(PlantKind kind);

struct RunConfig {
  bool large = true;
  Correction correction = Correction::zero_pivot_stiffness;
  PlantKind plant = PlantKind::linear3;
  double friction_tc = kCalibratedTc;  // N*m, friction3 only

  ControllerConfig controller;

  DemandKind demand_kind = DemandKind::sinusoid;
  std::optional<double> demand_amplitude_deg;  // default: the actuator's scan amplitude
  std::optional<double> demand_frequency_hz;   // default: the actuator's scan frequency
  double demand_phase_deg = 0.0;
  std::optional<double> target_deg;            // toc-solve; default: the scan amplitude

  double duration_s = 1.0;
  ScanConfig scan;

  std::string output_path = "-";  // "-" is stdout
  std::string output_dir;         // per-pass files; empty disables them

  ActuatorParams actuator() const;
  PlantSpec plant_spec() const;
  DemandSignal demand() const;
  double target() const;  // deg
  int order() const { return plant == PlantKind::linear2 ? 2 : 3; }

  /// Throws Error{unsupported_combination / invalid_argument}.
  void validate() const;
};

/// Every accepted key with its default rendered as text.
std::vector<std::pair<std::string, std::string>> config_keys();

/// Sets one key; throws Error{unknown_key} or Error{invalid_argument}.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Parses text in the config format; errors name the 1-based line.
RunConfig parse_config(const std::string& text, RunConfig base = {});

/// Reads and parses a file; a missing file is an invalid_argument error.
RunConfig load_config(const std::string& path, RunConfig base = {});

}  // namespace lidarscan
