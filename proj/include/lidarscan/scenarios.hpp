#pragma once

// Reference scenarios shared by the command line and the test suites:
// each regenerates one table and compares it with the embedded values.

#include "lidarscan/csv.hpp"
#include "lidarscan/golden.hpp"

#include <string>
#include <vector>

namespace lidarscan {

struct ScenarioReport {
  std::string id;
  std::vector<CellReport> cells;
  CsvTable table;
  std::vector<int> decimals;  // display precision for `table` with two-decimal output
  std::string json;           // solver scenarios: solution and certificate

  bool pass() const;
};

/// table2 ... table10.
std::vector<std::string> scenario_ids();

/// Throws Error{invalid_argument} for an unknown id.
ScenarioReport reproduce(const std::string& id);

/// One mirror's closed loop in a tracked scan.
struct TrackedAxis {
  PlantSpec plant;
  ControllerConfig controller;
  DemandSignal demand;
};

/// Large mirror: cosine demand; small mirror: negative sine.
DemandSignal scan_demand(bool large, const ScanConfig& scan = {});

/// Both mirrors with friction at u0 = 20 V: large at 4 ms, small with a
/// 4 ms demand and 1 ms control.
std::pair<TrackedAxis, TrackedAxis> unsynchronized_axes();

/// Both mirrors with friction at u0 = 20 V, 4 ms demand and 0.1 ms control.
std::pair<TrackedAxis, TrackedAxis> synchronization_axes();

struct PhaseDelays {
  double large = 0.0;  // rad, negative when lagging
  double small = 0.0;
};

/// Steady phase of each axis of synchronization_axes().
PhaseDelays measure_scan_phase_delays();

/// Runs both axes for duration and samples them into passes.
std::vector<Pass> tracked_scan(const std::pair<TrackedAxis, TrackedAxis>& axes, double duration,
                               const ScanConfig& scan = {});

}  // namespace lidarscan
