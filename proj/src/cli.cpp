#include "lidarscan/cli.hpp"

#include "lidarscan/config.hpp"
#include "lidarscan/csv.hpp"
#include "lidarscan/parallel.hpp"
#include "lidarscan/scenarios.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace lidarscan {

namespace {

using nlohmann::json;

constexpr double kStepVolts = 1.0;
constexpr double kSineVolts = 5.0;
constexpr double kLinearDt = 1e-4;    // s
constexpr double kFrictionDt = 1e-5;  // s
constexpr double kCalibrationSlope = 2.2026;  // deg/V

/// A command-line flag that maps onto one configuration key.
struct Binding {
  std::string key;
  std::string value;
  CLI::Option* option = nullptr;
};

/// Subcommand-local options, shared by every subcommand that accepts them.
struct Options {
  std::string config_path;
  std::vector<std::string> settings;
  int order = 0;
  bool paper_format = false;
  bool diagnostics = false;
  std::optional<double> volts;
  std::optional<double> input_hz;
  double dt = 0.0;
  std::vector<double> omegas;
  double omega_min = 1.0;
  double omega_max = 1e4;
  int points = 200;
  std::string source = "ideal";
  bool synchronize = false;
  std::string target;
  std::vector<double> u0_list{1.0, 2.0, 3.0, 4.0};
  double slope = kCalibrationSlope;
  std::string table_path;
  std::string scenario;
  std::string plot_kind;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  Options opt;
  std::deque<Binding> bindings;
};

void bind_key(Context& ctx, CLI::App* app, const std::string& flag, const std::string& key,
              const std::string& help, const std::string& group) {
  Binding& b = ctx.bindings.emplace_back();
  b.key = key;
  b.option = app->add_option(flag, b.value, help + " [" + key + "]")->group(group);
}

void add_config_flags(Context& ctx, CLI::App* app) {
  Options& o = ctx.opt;
  app->add_option("--config", o.config_path, "key=value configuration file")->check(CLI::ExistingFile);
  app->add_option("--set", o.settings, "extra key=value setting, applied last");
  const std::string model = "Model";
  bind_key(ctx, app, "--actuator", "actuator", "large|small", model);
  bind_key(ctx, app, "--correction", "correction", "none|damping_x10|zero_pivot_stiffness", model);
  bind_key(ctx, app, "--plant", "plant.kind", "linear2|linear3|friction3", model);
  app->add_option("--order", o.order, "model order 2 or 3")->check(CLI::IsMember({2, 3}))->group(model);
  bind_key(ctx, app, "--tc", "plant.tc_nm", "Coulomb friction torque, N*m", model);
  const std::string ctrl = "Controller";
  bind_key(ctx, app, "--u0", "controller.u0_volts", "control bound, V", ctrl);
  bind_key(ctx, app, "--ts-control", "controller.ts_control_s", "control period, s", ctrl);
  bind_key(ctx, app, "--ts-demand", "controller.ts_demand_s", "demand period, s", ctrl);
  bind_key(ctx, app, "--prediction", "controller.prediction", "on|off", ctrl);
  bind_key(ctx, app, "--target-mode", "controller.target_mode", "position_only|position_velocity", ctrl);
  bind_key(ctx, app, "--phase-shift-deg", "controller.phase_shift_deg", "demand phase advance, deg", ctrl);
  const std::string dem = "Demand";
  bind_key(ctx, app, "--demand", "demand.kind", "constant|square|sinusoid", dem);
  bind_key(ctx, app, "--amplitude-deg", "demand.amplitude_deg", "demand amplitude, deg", dem);
  bind_key(ctx, app, "--frequency-hz", "demand.frequency_hz", "demand frequency, Hz", dem);
  bind_key(ctx, app, "--phase-deg", "demand.phase_deg", "demand phase, deg", dem);
  bind_key(ctx, app, "--target-deg", "toc.target_deg", "rest-to-rest target, deg", dem);
  bind_key(ctx, app, "--duration", "run.duration_s", "simulated time, s", dem);
  const std::string scan = "Scan";
  bind_key(ctx, app, "--range", "scan.range_m", "scan plane range, m", scan);
  bind_key(ctx, app, "--separation", "scan.separation_m", "mirror separation, m", scan);
  bind_key(ctx, app, "--sample-period", "scan.sample_period_s", "scan sample period, s", scan);
  bind_key(ctx, app, "--pass-duration", "scan.pass_duration_s", "pass length, s", scan);
  const std::string output = "Output";
  bind_key(ctx, app, "-o,--output", "output.path", "output file, - for stdout", output);
  bind_key(ctx, app, "--output-dir", "output.dir", "directory for per-pass or per-scenario files", output);
}

RunConfig resolve(const Context& ctx) {
  const Options& o = ctx.opt;
  RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  for (const auto& b : ctx.bindings) {
    if (b.option->count() > 0) apply_setting(c, b.key, b.value);
  }
  if (o.order == 2) {
    if (c.plant == PlantKind::friction3) {
      throw Error(ErrorKind::unsupported_combination, "friction requires the third-order model");
    }
    c.plant = PlantKind::linear2;
  } else if (o.order == 3 && c.plant == PlantKind::linear2) {
    c.plant = PlantKind::linear3;
  }
  for (const auto& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::invalid_argument, "--set expects key=value, got '" + s + "'");
    apply_setting(c, s.substr(0, eq), s.substr(eq + 1));
  }
  c.validate();
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::invalid_argument, "cannot write '" + path + "'");
  f << text;
  if (!f) throw Error(ErrorKind::invalid_argument, "failed writing '" + path + "'");
}

void emit(Context& ctx, const RunConfig& c, const std::string& text) {
  if (c.output_path.empty() || c.output_path == "-") {
    ctx.out << text;
  } else {
    write_file(c.output_path, text);
  }
}

std::filesystem::path output_dir(const RunConfig& c) {
  std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

/// Series with radian channels converted to degrees; solver diagnostics
/// are kept only on request.
CsvTable degree_table(const TimeSeries& series, bool diagnostics) {
  const CsvTable wide = series_table(series);
  std::vector<std::size_t> keep;
  std::vector<double> scale;
  CsvTable t;
  for (std::size_t i = 0; i < wide.header.size(); ++i) {
    std::string name = wide.header[i];
    if (!diagnostics && (name == channel::solver_ok || name == channel::intervals)) continue;
    double k = 1.0;
    for (const std::string suffix : {"_rad", "_rad_s"}) {
      if (name.size() > suffix.size() && name.ends_with(suffix)) {
        name.replace(name.size() - suffix.size(), 4, "_deg");
        k = rad_to_deg(1.0);
      }
    }
    keep.push_back(i);
    scale.push_back(k);
    t.header.push_back(name);
  }
  t.rows.reserve(wide.rows.size());
  for (const auto& row : wide.rows) {
    std::vector<double> r;
    r.reserve(keep.size());
    for (std::size_t j = 0; j < keep.size(); ++j) r.push_back(row[keep[j]] * scale[j]);
    t.rows.push_back(std::move(r));
  }
  return t;
}

double scan_frequency(const RunConfig& c) { return c.large ? c.scan.frequency_lm : c.scan.frequency_sm; }

TimeSeries open_loop(const Context& ctx, const RunConfig& c, bool sine) {
  const ActuatorParams p = c.actuator();
  const LinearModel m = build_model(p, c.order());
  const Vec x0 = Vec::Zero(m.order);
  const double volts = ctx.opt.volts.value_or(sine ? kSineVolts : kStepVolts);
  const InputSignal input = sine ? InputSignal::cosine(volts, ctx.opt.input_hz.value_or(scan_frequency(c)))
                                 : InputSignal::step_of(volts);
  const bool friction = c.plant == PlantKind::friction3;
  double dt = ctx.opt.dt;
  if (dt <= 0.0) dt = friction ? kFrictionDt : std::min(kLinearDt, max_stable_step(m));
  return friction ? integrate_friction(m, p, x0, input, dt, c.duration_s)
                  : integrate_linear(m, x0, input, dt, c.duration_s);
}

/// Half the peak-to-peak output over the final input period, deg.
std::optional<double> steady_amplitude(const TimeSeries& s, double frequency_hz) {
  const double period = 1.0 / frequency_hz;
  if (s.rows() < 2 || s.time(s.rows() - 1) < 2.0 * period) return std::nullopt;
  const auto& phi = s[channel::phi];
  const double start = s.time(s.rows() - 1) - period;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t r = 0; r < s.rows(); ++r) {
    if (s.time(r) < start) continue;
    lo = std::min(lo, phi[r]);
    hi = std::max(hi, phi[r]);
  }
  return rad_to_deg(0.5 * (hi - lo));
}

std::vector<double> bode_grid(const Options& o) {
  if (!o.omegas.empty()) return o.omegas;
  if (!(o.omega_min > 0.0) || !(o.omega_max > o.omega_min) || o.points < 2) {
    throw Error(ErrorKind::invalid_argument, "bode sweep needs 0 < omega-min < omega-max and points >= 2");
  }
  std::vector<double> w(static_cast<std::size_t>(o.points));
  const double a = std::log10(o.omega_min);
  const double b = std::log10(o.omega_max);
  for (int k = 0; k < o.points; ++k) w[k] = std::pow(10.0, a + (b - a) * k / (o.points - 1));
  return w;
}

CsvTable bode_table(const Options& o, const RunConfig& c) {
  const LinearModel m = build_model(c.actuator(), c.order());
  const std::vector<double> w = bode_grid(o);
  const std::vector<BodePoint> pts = parallel::bode_sweep(m, w);
  CsvTable t;
  t.header = {"omega_rad_s", "magnitude_rad_V", "phase_deg"};
  for (std::size_t k = 0; k < w.size(); ++k) t.rows.push_back({w[k], pts[k].magnitude, rad_to_deg(pts[k].phase)});
  return t;
}

TrackingResult track_run(const RunConfig& c) {
  return run_tracking(c.plant_spec(), c.controller, c.demand(), c.duration_s);
}

std::string track_summary(const TrackingResult& r) {
  std::ostringstream s;
  s << "accuracy_deg=" << format_fixed(rad_to_deg(r.accuracy_achieved), kCsvDecimals) << '\n'
    << "tracking_error_max_deg=" << format_fixed(rad_to_deg(r.tracking_error_max), kCsvDecimals) << '\n'
    << "transition_time_s=" << format_fixed(r.transition_time, kCsvDecimals) << '\n'
    << "steady_start_s=" << format_fixed(r.steady_start, kCsvDecimals) << '\n'
    << "solves=" << r.solves << '\n'
    << "solver_failures=" << r.solver_failures << '\n';
  return s.str();
}

std::vector<Pass> scan_passes(const Options& o, const RunConfig& c) {
  if (o.source == "ideal") return generate_ideal_scan(c.scan, c.duration_s);
  auto axes = o.synchronize ? synchronization_axes() : unsynchronized_axes();
  axes.first.demand = scan_demand(true, c.scan);
  axes.second.demand = scan_demand(false, c.scan);
  if (o.synchronize) {
    const PhaseDelays d = measure_scan_phase_delays();
    axes.first.controller.phase_shift = -d.large;
    axes.second.controller.phase_shift = -d.small;
  }
  return tracked_scan(axes, c.duration_s, c.scan);
}

std::vector<int> scan_decimals(const Options& o) {
  return o.paper_format ? paper_format_decimals() : std::vector<int>{};
}

/// One row per (variable, x) pair: variable,<x column>,value.
std::string long_format(const CsvTable& wide) {
  std::ostringstream s;
  s << "variable," << wide.header.front() << ",value\n";
  for (std::size_t col = 1; col < wide.header.size(); ++col) {
    for (const auto& row : wide.rows) {
      s << wide.header[col] << ',' << format_fixed(row.front(), kCsvDecimals) << ','
        << format_fixed(row[col], kCsvDecimals) << '\n';
    }
  }
  return s.str();
}

json model_json(const RunConfig& c) {
  const ActuatorParams p = c.actuator();
  const LinearModel m = build_model(p, c.order());
  const TransferFunction tf = transfer_function(p, c.order());
  const ModalAnalysis modal = modal_analysis(m);
  json j;
  j["actuator"] = c.large ? "large" : "small";
  j["correction"] = to_string(c.correction);
  j["order"] = c.order();
  j["state_labels"] = m.state_labels;
  json A = json::array();
  for (Eigen::Index r = 0; r < m.A.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.A.cols(); ++k) row.push_back(m.A(r, k));
    A.push_back(row);
  }
  j["A"] = A;
  j["B"] = std::vector<double>(m.B.data(), m.B.data() + m.B.size());
  j["C"] = std::vector<double>(m.C.data(), m.C.data() + m.C.size());
  j["D"] = m.D;
  j["transfer_function"] = {{"gain", tf.K},
                            {"denominator_factor", tf.denom},
                            {"integrator", tf.integrator},
                            {"denominator", tf.expanded_denominator()}};
  json eig = json::array();
  for (const auto& e : modal.eigenvalues) eig.push_back({{"re", e.real()}, {"im", e.imag()}});
  j["eigenvalues"] = eig;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  j["natural_frequency_rad_s"] = opt(modal.natural_frequency);
  j["damping_ratio"] = opt(modal.damping_ratio);
  j["resonant_frequency_hz"] = opt(modal.resonant_frequency_hz);
  j["mechanical_time_constant_s"] = p.mechanical_time_constant();
  j["simplification_ratio"] = p.simplification_ratio();
  return j;
}

int cmd_model_info(Context& ctx) {
  const RunConfig c = resolve(ctx);
  emit(ctx, c, model_json(c).dump(2) + "\n");
  return kExitOk;
}

int cmd_open_loop(Context& ctx, bool sine) {
  const RunConfig c = resolve(ctx);
  const TimeSeries s = open_loop(ctx, c, sine);
  emit(ctx, c, to_csv(degree_table(s, false)));
  if (sine) {
    if (const auto a = steady_amplitude(s, ctx.opt.input_hz.value_or(scan_frequency(c)))) {
      ctx.err << "steady_amplitude_deg=" << format_fixed(*a, kCsvDecimals) << '\n';
    }
  }
  return kExitOk;
}

int cmd_bode(Context& ctx) {
  const RunConfig c = resolve(ctx);
  emit(ctx, c, to_csv(bode_table(ctx.opt, c)));
  return kExitOk;
}

int cmd_toc_solve(Context& ctx) {
  const RunConfig c = resolve(ctx);
  const TocProblem problem = make_problem(build_model(c.actuator(), c.order()), c.target(), c.controller.u0);
  const BangBangSolution s = solve(problem);
  json j;
  j["solution"] = json::parse(to_json(s));
  j["certificate"] = nullptr;
  int code = s.converged ? kExitOk : kExitInvalid;
  if (!s.converged) ctx.err << "error: solver did not converge\n";
  if (s.converged) {
    try {
      const PmpCertificate cert = certify(problem, s);
      j["certificate"] = json::parse(to_json(cert));
      if (!cert.sign_match) {
        ctx.err << "error: switching structure fails the certificate\n";
        code = kExitInvalid;
      }
    } catch (const Error& e) {
      ctx.err << "error: " << e.what() << '\n';
      code = kExitInvalid;
    }
  }
  emit(ctx, c, j.dump(2) + "\n");
  return code;
}

int cmd_track(Context& ctx) {
  const RunConfig c = resolve(ctx);
  const TrackingResult r = track_run(c);
  emit(ctx, c, to_csv(degree_table(r.series, ctx.opt.diagnostics)));
  ctx.err << track_summary(r);
  return kExitOk;
}

int cmd_scan(Context& ctx) {
  const RunConfig c = resolve(ctx);
  const std::vector<Pass> passes = scan_passes(ctx.opt, c);
  const std::vector<int> decimals = scan_decimals(ctx.opt);
  emit(ctx, c, to_csv(scan_table(flatten(passes)), decimals));
  if (!c.output_dir.empty()) {
    const auto dir = output_dir(c);
    for (const auto& p : passes) {
      char name[64];
      std::snprintf(name, sizeof name, "pass_%03d_%s.csv", p.index, to_string(p.parity));
      write_file((dir / name).string(), to_csv(scan_table(p.samples), decimals));
    }
  }
  return kExitOk;
}

int cmd_calibrate(Context& ctx) {
  const RunConfig c = resolve(ctx);
  json j;
  if (ctx.opt.target == "friction") {
    if (!(c.actuator().c > 0.0)) {
      throw Error(ErrorKind::invalid_argument,
                  "friction calibration needs pivot stiffness for a steady plateau; use --correction none");
    }
    const FrictionCalibration f = calibrate_friction(c.actuator(), ctx.opt.u0_list, ctx.opt.slope);
    j = {{"tc_nm", f.Tc},
         {"rms_residual_deg", f.rms_residual_deg},
         {"u0_v", ctx.opt.u0_list},
         {"plateaus_deg", f.plateaus_deg}};
  } else {
    std::vector<ScanSample> samples;
    if (ctx.opt.table_path.empty()) {
      samples = table2();
    } else {
      std::ifstream in(ctx.opt.table_path);
      if (!in) throw Error(ErrorKind::invalid_argument, "cannot open '" + ctx.opt.table_path + "'");
      samples = scan_samples(read_csv(in));
    }
    const SeparationFit fit = calibrate_separation(samples, c.scan.range_m);
    j = {{"separation_m", fit.separation_m}, {"rms_m", fit.rms_m}, {"samples", samples.size()}};
  }
  emit(ctx, c, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_reproduce(Context& ctx) {
  const RunConfig c = resolve(ctx);
  const std::string& id = ctx.opt.scenario;
  const std::vector<std::string> ids = id == "all" ? scenario_ids() : std::vector<std::string>{id};
  bool all_pass = true;
  for (const auto& sid : ids) {
    const ScenarioReport r = reproduce(sid);
    for (const auto& cell : r.cells) {
      ctx.err << sid << ' ' << cell.name << " worst=" << format_fixed(cell.worst, 6)
              << " tolerance=" << format_fixed(cell.tolerance, 6) << (cell.pass() ? " PASS" : " FAIL") << '\n';
    }
    ctx.err << sid << (r.pass() ? " PASS" : " FAIL") << '\n';
    all_pass = all_pass && r.pass();
    const std::string csv = to_csv(r.table, ctx.opt.paper_format ? r.decimals : std::vector<int>{});
    if (!c.output_dir.empty()) {
      const auto dir = output_dir(c);
      write_file((dir / (sid + ".csv")).string(), csv);
      if (!r.json.empty()) write_file((dir / (sid + ".json")).string(), r.json);
    }
    if (ids.size() == 1) emit(ctx, c, csv);
  }
  return all_pass ? kExitOk : kExitMismatch;
}

int cmd_plot_data(Context& ctx) {
  const RunConfig c = resolve(ctx);
  const Options& o = ctx.opt;
  CsvTable wide;
  if (o.plot_kind == "step" || o.plot_kind == "sine") {
    wide = degree_table(open_loop(ctx, c, o.plot_kind == "sine"), false);
  } else if (o.plot_kind == "bode") {
    wide = bode_table(o, c);
  } else if (o.plot_kind == "track") {
    wide = degree_table(track_run(c).series, o.diagnostics);
  } else {
    wide = scan_table(flatten(scan_passes(o, c)));
  }
  emit(ctx, c, long_format(wide));
  return kExitOk;
}

void add_open_loop_flags(Options& o, CLI::App* app) {
  app->add_option("--volts", o.volts, "input amplitude, V");
  app->add_option("--input-hz", o.input_hz, "cosine input frequency, Hz (default: scan frequency)");
  app->add_option("--dt", o.dt, "integration step, s");
}

void add_bode_flags(Options& o, CLI::App* app) {
  app->add_option("--omega", o.omegas, "evaluate at these rad/s instead of a sweep");
  app->add_option("--omega-min", o.omega_min, "sweep start, rad/s");
  app->add_option("--omega-max", o.omega_max, "sweep end, rad/s");
  app->add_option("--points", o.points, "log-spaced sweep points");
}

void add_scan_flags(Options& o, CLI::App* app) {
  app->add_option("--source", o.source, "ideal|tracked")->check(CLI::IsMember({"ideal", "tracked"}));
  app->add_flag("--synchronize", o.synchronize, "tracked: apply the measured phase delays as shifts");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context ctx{out, err, {}, {}};
  Options& o = ctx.opt;
  CLI::App app{"Two-mirror LIDAR scanner: actuator models, time-optimal control, tracking and scan geometry"};
  app.name("lidarscan");
  app.require_subcommand(1);

  auto* model_info = app.add_subcommand("model-info", "state-space matrices, transfer function, eigenvalues (JSON)");
  auto* step = app.add_subcommand("step", "open-loop step response (CSV)");
  auto* sine = app.add_subcommand("sine", "open-loop cosine-input response (CSV)");
  auto* bode = app.add_subcommand("bode", "magnitude and phase sweep (CSV)");
  auto* toc = app.add_subcommand("toc-solve", "time-optimal rest-to-rest solution and certificate (JSON)");
  auto* track = app.add_subcommand("track", "closed-loop tracking run (CSV, summary on stderr)");
  auto* scan = app.add_subcommand("scan", "ideal or tracked scan pattern (CSV, optional per-pass files)");
  auto* calibrate = app.add_subcommand("calibrate", "fit the friction torque or the mirror separation (JSON)");
  auto* repro = app.add_subcommand("reproduce", "regenerate a reference table and compare it");
  auto* plot = app.add_subcommand("plot-data", "long-format CSV for plotting");

  for (auto* sub : {model_info, step, sine, bode, toc, track, scan, calibrate, repro, plot}) {
    add_config_flags(ctx, sub);
  }
  add_open_loop_flags(o, step);
  add_open_loop_flags(o, sine);
  add_open_loop_flags(o, plot);
  add_bode_flags(o, bode);
  add_bode_flags(o, plot);
  add_scan_flags(o, scan);
  add_scan_flags(o, plot);
  for (auto* sub : {scan, repro}) {
    sub->add_flag("--paper-format", o.paper_format, "scan tables with 3-decimal time and 2-decimal values");
  }
  for (auto* sub : {track, plot}) sub->add_flag("--diagnostics", o.diagnostics, "add solver columns");
  calibrate->add_option("target", o.target, "friction|geometry")
      ->required()
      ->check(CLI::IsMember({"friction", "geometry"}));
  calibrate->add_option("--u0-list", o.u0_list, "friction: step offsets, V");
  calibrate->add_option("--slope", o.slope, "friction: plateau slope, deg/V");
  calibrate->add_option("--table", o.table_path, "geometry: scan CSV (default: embedded reference)");
  std::vector<std::string> ids = scenario_ids();
  ids.push_back("all");
  repro->add_option("scenario", o.scenario, "table2 ... table10 or all")->required()->check(CLI::IsMember(ids));
  plot->add_option("kind", o.plot_kind, "step|sine|bode|track|scan")
      ->required()
      ->check(CLI::IsMember({"step", "sine", "bode", "track", "scan"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (model_info->parsed()) return cmd_model_info(ctx);
    if (step->parsed()) return cmd_open_loop(ctx, false);
    if (sine->parsed()) return cmd_open_loop(ctx, true);
    if (bode->parsed()) return cmd_bode(ctx);
    if (toc->parsed()) return cmd_toc_solve(ctx);
    if (track->parsed()) return cmd_track(ctx);
    if (scan->parsed()) return cmd_scan(ctx);
    if (calibrate->parsed()) return cmd_calibrate(ctx);
    if (repro->parsed()) return cmd_reproduce(ctx);
    return cmd_plot_data(ctx);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace lidarscan
