#include "lidarscan/scenarios.hpp"

#include <cmath>
#include <limits>

namespace lidarscan {

namespace {

constexpr double kScanU0 = 20.0;
constexpr double kLargeDelayRun = 1.0;  // s
constexpr double kSmallDelayRun = 0.5;  // s
constexpr double kTrackedScanDuration = 2.0;  // s

ScenarioReport ideal_scan_report() {
  ScenarioReport r;
  r.id = "table2";
  const auto samples = flatten(generate_ideal_scan(ScanConfig{}, 0.4));
  const auto& ref = table2();
  CellReport n{"rows", 0.0, 0.0};
  n.worst = std::abs(static_cast<double>(samples.size()) - static_cast<double>(ref.size()));
  r.cells.push_back(n);
  CellReport lm{"phi_lm_deg", 0.0, kAngleTolerance};
  CellReport sm{"phi_sm_deg", 0.0, kAngleTolerance};
  CellReport x{"x_m", 0.0, kPlaneTolerance};
  CellReport y{"y_m", 0.0, kPlaneTolerance};
  for (std::size_t i = 0; i < std::min(samples.size(), ref.size()); ++i) {
    lm.worst = std::max(lm.worst, std::abs(samples[i].phi_lm - ref[i].phi_lm));
    sm.worst = std::max(sm.worst, std::abs(samples[i].phi_sm - ref[i].phi_sm));
    x.worst = std::max(x.worst, std::abs(samples[i].x - ref[i].x));
    y.worst = std::max(y.worst, std::abs(samples[i].y - ref[i].y));
  }
  r.cells.insert(r.cells.end(), {lm, sm, x, y});
  r.table = scan_table(samples);
  r.decimals = paper_format_decimals();
  return r;
}

void add_solver_case(ScenarioReport& r, const TocGolden& g) {
  const ActuatorParams params = apply_correction(g.large ? large_mirror() : small_mirror(), g.correction);
  const TocProblem problem = make_problem(build_model(params, g.order), g.target_deg, g.u0);
  const BangBangSolution s = solve(problem);
  CellReport conv{g.id + "/converged", s.converged ? 0.0 : 1.0, 0.0};
  CellReport count{g.id + "/interval_count",
                   std::abs(static_cast<double>(s.intervals.size()) - static_cast<double>(g.intervals.size())), 0.0};
  CellReport lengths{g.id + "/intervals_s", 0.0, kTocTolerance};
  for (std::size_t k = 0; k < std::min(s.intervals.size(), g.intervals.size()); ++k) {
    lengths.worst = std::max(lengths.worst, std::abs(s.intervals[k] - g.intervals[k]));
  }
  CellReport total{g.id + "/total_time_s", std::abs(s.total_time - g.total_time), kTocTolerance};
  CellReport cert{g.id + "/certificate", 1.0, 0.0};
  std::string cert_json = "null";
  if (s.converged) {
    try {
      const PmpCertificate c = certify(problem, s);
      cert.worst = c.sign_match ? 0.0 : 1.0;
      cert_json = to_json(c);
    } catch (const Error&) {
    }
  }
  r.cells.insert(r.cells.end(), {conv, count, lengths, total, cert});
  r.json += "{\"case\": \"" + g.id + "\", \"solution\": " + to_json(s) + ", \"certificate\": " + cert_json + "}\n";
  std::vector<double> row{static_cast<double>(g.order), g.u0, static_cast<double>(s.initial_sign)};
  for (std::size_t k = 0; k < 3; ++k) row.push_back(k < s.intervals.size() ? s.intervals[k] : std::nan(""));
  row.push_back(s.total_time);
  r.table.rows.push_back(row);
}

ScenarioReport solver_report(const std::string& id) {
  ScenarioReport r;
  r.id = id;
  r.table.header = {"order", "u0_V", "initial_sign", "interval1_s", "interval2_s", "interval3_s", "total_time_s"};
  r.decimals = {0, 0, 0, 6, 6, 6, 6};
  for (const auto& g : toc_goldens()) {
    if (g.id.rfind(id, 0) == 0 && (g.id.size() == id.size() || g.id[id.size()] == '_')) add_solver_case(r, g);
  }
  return r;
}

ScenarioReport tracked_report(const std::string& id, const std::vector<Pass>& passes, const ScanSample& ref) {
  ScenarioReport r;
  r.id = id;
  const auto samples = flatten(passes);
  CellReport lm{"t1.0/phi_lm_deg", std::numeric_limits<double>::infinity(), kTrackedTolerance};
  CellReport sm{"t1.0/phi_sm_deg", std::numeric_limits<double>::infinity(), kTrackedTolerance};
  for (const auto& s : samples) {
    if (std::abs(s.t - ref.t) < 1e-9) {
      lm.worst = std::abs(s.phi_lm - ref.phi_lm);
      sm.worst = std::abs(s.phi_sm - ref.phi_sm);
    }
  }
  r.cells = {lm, sm};
  r.table = scan_table(samples);
  r.decimals = paper_format_decimals();
  return r;
}

}  // namespace

bool ScenarioReport::pass() const {
  for (const auto& c : cells) {
    if (!c.pass()) return false;
  }
  return !cells.empty();
}

std::vector<std::string> scenario_ids() {
  return {"table2", "table3", "table4", "table5", "table6", "table7", "table8", "table9", "table10"};
}

DemandSignal scan_demand(bool large, const ScanConfig& scan) {
  return large ? DemandSignal::sine(scan.amplitude_lm, scan.frequency_lm, kPi / 2.0)
               : DemandSignal::sine(scan.amplitude_sm, scan.frequency_sm, kPi);
}

namespace {

TrackedAxis friction_axis(bool large, double ts_control, double ts_demand) {
  TrackedAxis a;
  a.plant.params = apply_correction(large ? large_mirror() : small_mirror(), Correction::zero_pivot_stiffness);
  a.plant.params.Tc = kCalibratedTc;
  a.plant.order = 3;
  a.plant.friction = true;
  a.controller.u0 = kScanU0;
  a.controller.ts_control = ts_control;
  a.controller.ts_demand = ts_demand;
  a.demand = scan_demand(large);
  return a;
}

}  // namespace

std::pair<TrackedAxis, TrackedAxis> unsynchronized_axes() {
  return {friction_axis(true, 4e-3, 4e-3), friction_axis(false, 1e-3, 4e-3)};
}

std::pair<TrackedAxis, TrackedAxis> synchronization_axes() {
  return {friction_axis(true, 1e-4, 4e-3), friction_axis(false, 1e-4, 4e-3)};
}

PhaseDelays measure_scan_phase_delays() {
  const auto [large, small] = synchronization_axes();
  PhaseDelays d;
  d.large = measure_phase_delay(large.plant, large.controller, large.demand, kLargeDelayRun);
  d.small = measure_phase_delay(small.plant, small.controller, small.demand, kSmallDelayRun);
  return d;
}

std::vector<Pass> tracked_scan(const std::pair<TrackedAxis, TrackedAxis>& axes, double duration,
                               const ScanConfig& scan) {
  const auto& [large, small] = axes;
  const TrackingResult rl = run_tracking(large.plant, large.controller, large.demand, duration);
  const TrackingResult rs = run_tracking(small.plant, small.controller, small.demand, duration);
  return generate_tracked_scan(rl, rs, scan, duration);
}

ScenarioReport reproduce(const std::string& id) {
  if (id == "table2") return ideal_scan_report();
  if (id == "table9") {
    return tracked_report(id, tracked_scan(unsynchronized_axes(), kTrackedScanDuration), table9_row());
  }
  if (id == "table10") {
    auto axes = synchronization_axes();
    const PhaseDelays d = measure_scan_phase_delays();
    axes.first.controller.phase_shift = -d.large;
    axes.second.controller.phase_shift = -d.small;
    return tracked_report(id, tracked_scan(axes, kTrackedScanDuration), table10_row());
  }
  for (const auto& s : scenario_ids()) {
    if (s == id) return solver_report(id);
  }
  throw Error(ErrorKind::invalid_argument, "unknown scenario '" + id + "'");
}

}  // namespace lidarscan
