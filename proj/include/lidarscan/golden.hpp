#pragma once

// Reference values with their tolerances: model constants, time-optimal
// solutions, the ideal scan table and tracked scan rows.

#include "lidarscan/scan_geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lidarscan {

/// Absolute tolerance implied by a printed value: half a unit in its last
/// digit, and never tighter than 5e-5 relative.
double printed_tolerance(const std::string& printed);

/// A printed reference number and the computation that should reproduce it.
struct GoldenValue {
  std::string name;
  std::string printed;
  std::function<double()> actual;
};

/// Matrices, transfer functions, eigenvalues and resonance data of both
/// actuators and their corrections.
std::vector<GoldenValue> model_goldens();

struct TocGolden {
  std::string id;  // "table3_order2", ...
  bool large = true;
  Correction correction = Correction::none;
  int order = 3;
  double u0 = 10.0;
  double target_deg = 0.0;
  std::vector<double> intervals;  // s
  double total_time = 0.0;        // s
};

inline constexpr double kTocTolerance = 2e-4;  // s, intervals and totals

std::vector<TocGolden> toc_goldens();

/// Ideal scan reference: 101 rows over one large-mirror period.
const std::vector<ScanSample>& table2();

inline constexpr double kAngleTolerance = 0.005;   // deg
inline constexpr double kPlaneTolerance = 0.05;    // m
inline constexpr double kTrackedTolerance = 0.5;   // deg

/// Tracked scan row at t = 1.0 s, without and with phase synchronization.
ScanSample table9_row();
ScanSample table10_row();

/// Worst cell deviation of one compared quantity.
struct CellReport {
  std::string name;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass() const { return worst <= tolerance; }
};

}  // namespace lidarscan
