#include "lidarscan/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace lidarscan {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || value.empty()) {
    throw Error(ErrorKind::invalid_argument, key + ": '" + value + "' is not a number");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw Error(ErrorKind::invalid_argument, key + ": expected on/off, got '" + value + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : "auto"; }

std::optional<double> to_optional(const std::string& key, const std::string& value) {
  if (value == "auto") return std::nullopt;
  return to_number(key, value);
}

struct Key {
  std::string name;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"actuator",
       [](RunConfig& c, const std::string& v) {
         if (v != "large" && v != "small") {
           throw Error(ErrorKind::invalid_argument, "actuator must be large or small");
         }
         c.large = v == "large";
       },
       [](const RunConfig& c) { return std::string(c.large ? "large" : "small"); }},
      {"correction", [](RunConfig& c, const std::string& v) { c.correction = parse_correction(v); },
       [](const RunConfig& c) { return std::string(to_string(c.correction)); }},
      {"plant.kind", [](RunConfig& c, const std::string& v) { c.plant = parse_plant_kind(v); },
       [](const RunConfig& c) { return std::string(to_string(c.plant)); }},
      {"plant.tc_nm", [](RunConfig& c, const std::string& v) { c.friction_tc = to_number("plant.tc_nm", v); },
       [](const RunConfig& c) { return fmt(c.friction_tc); }},
      {"controller.u0_volts",
       [](RunConfig& c, const std::string& v) { c.controller.u0 = to_number("controller.u0_volts", v); },
       [](const RunConfig& c) { return fmt(c.controller.u0); }},
      {"controller.ts_control_s",
       [](RunConfig& c, const std::string& v) {
         c.controller.ts_control = to_number("controller.ts_control_s", v);
       },
       [](const RunConfig& c) { return fmt(c.controller.ts_control); }},
      {"controller.ts_demand_s",
       [](RunConfig& c, const std::string& v) {
         c.controller.ts_demand = to_number("controller.ts_demand_s", v);
       },
       [](const RunConfig& c) { return fmt(c.controller.ts_demand); }},
      {"controller.prediction",
       [](RunConfig& c, const std::string& v) { c.controller.prediction = to_bool("controller.prediction", v); },
       [](const RunConfig& c) { return std::string(c.controller.prediction ? "on" : "off"); }},
      {"controller.target_mode",
       [](RunConfig& c, const std::string& v) { c.controller.target_mode = parse_target_mode(v); },
       [](const RunConfig& c) { return std::string(to_string(c.controller.target_mode)); }},
      {"controller.phase_shift_deg",
       [](RunConfig& c, const std::string& v) {
         c.controller.phase_shift = deg_to_rad(to_number("controller.phase_shift_deg", v));
       },
       [](const RunConfig& c) { return fmt(rad_to_deg(c.controller.phase_shift)); }},
      {"demand.kind", [](RunConfig& c, const std::string& v) { c.demand_kind = parse_demand_kind(v); },
       [](const RunConfig& c) { return std::string(to_string(c.demand_kind)); }},
      {"demand.amplitude_deg",
       [](RunConfig& c, const std::string& v) { c.demand_amplitude_deg = to_optional("demand.amplitude_deg", v); },
       [](const RunConfig& c) { return fmt(c.demand_amplitude_deg); }},
      {"demand.frequency_hz",
       [](RunConfig& c, const std::string& v) { c.demand_frequency_hz = to_optional("demand.frequency_hz", v); },
       [](const RunConfig& c) { return fmt(c.demand_frequency_hz); }},
      {"demand.phase_deg",
       [](RunConfig& c, const std::string& v) { c.demand_phase_deg = to_number("demand.phase_deg", v); },
       [](const RunConfig& c) { return fmt(c.demand_phase_deg); }},
      {"toc.target_deg",
       [](RunConfig& c, const std::string& v) { c.target_deg = to_optional("toc.target_deg", v); },
       [](const RunConfig& c) { return fmt(c.target_deg); }},
      {"run.duration_s", [](RunConfig& c, const std::string& v) { c.duration_s = to_number("run.duration_s", v); },
       [](const RunConfig& c) { return fmt(c.duration_s); }},
      {"scan.range_m", [](RunConfig& c, const std::string& v) { c.scan.range_m = to_number("scan.range_m", v); },
       [](const RunConfig& c) { return fmt(c.scan.range_m); }},
      {"scan.separation_m",
       [](RunConfig& c, const std::string& v) { c.scan.mirror_separation_m = to_number("scan.separation_m", v); },
       [](const RunConfig& c) { return fmt(c.scan.mirror_separation_m); }},
      {"scan.sample_period_s",
       [](RunConfig& c, const std::string& v) { c.scan.sample_period = to_number("scan.sample_period_s", v); },
       [](const RunConfig& c) { return fmt(c.scan.sample_period); }},
      {"scan.pass_duration_s",
       [](RunConfig& c, const std::string& v) { c.scan.pass_duration = to_number("scan.pass_duration_s", v); },
       [](const RunConfig& c) { return fmt(c.scan.pass_duration); }},
      {"output.path", [](RunConfig& c, const std::string& v) { c.output_path = v; },
       [](const RunConfig& c) { return c.output_path; }},
      {"output.dir", [](RunConfig& c, const std::string& v) { c.output_dir = v; },
       [](const RunConfig& c) { return c.output_dir; }},
  };
  return table;
}

}  // namespace

PlantKind parse_plant_kind(const std::string& name) {
  if (name == "linear2") return PlantKind::linear2;
  if (name == "linear3") return PlantKind::linear3;
  if (name == "friction3") return PlantKind::friction3;
  throw Error(ErrorKind::invalid_argument, "unknown plant kind '" + name + "'");
}

const char* to_string(PlantKind kind) {
  switch (kind) {
    case PlantKind::linear2:
      return "linear2";
    case PlantKind::linear3:
      return "linear3";
    case PlantKind::friction3:
      return "friction3";
  }
  return "?";
}

ActuatorParams RunConfig::actuator() const {
  ActuatorParams p = apply_correction(large ? large_mirror() : small_mirror(), correction);
  p.Tc = plant == PlantKind::friction3 ? friction_tc : 0.0;
  return p;
}

PlantSpec RunConfig::plant_spec() const {
  PlantSpec spec;
  spec.params = actuator();
  spec.order = order();
  spec.friction = plant == PlantKind::friction3;
  return spec;
}

DemandSignal RunConfig::demand() const {
  const double amp = demand_amplitude_deg.value_or(rad_to_deg(large ? scan.amplitude_lm : scan.amplitude_sm));
  const double freq = demand_frequency_hz.value_or(large ? scan.frequency_lm : scan.frequency_sm);
  switch (demand_kind) {
    case DemandKind::constant:
      return DemandSignal::constant_of(deg_to_rad(amp));
    case DemandKind::square: {
      DemandSignal d = DemandSignal::square_of(deg_to_rad(amp), freq);
      d.phase = deg_to_rad(demand_phase_deg);
      return d;
    }
    case DemandKind::sinusoid:
      break;
  }
  return DemandSignal::sine(deg_to_rad(amp), freq, deg_to_rad(demand_phase_deg));
}

double RunConfig::target() const {
  return target_deg.value_or(rad_to_deg(large ? scan.amplitude_lm : scan.amplitude_sm));
}

void RunConfig::validate() const {
  actuator().validate();
  if (plant == PlantKind::friction3 && !(friction_tc >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "plant.tc_nm must be >= 0");
  }
  controller.validate();
  demand().validate();
  scan.validate();
  if (!(duration_s >= 0.0)) throw Error(ErrorKind::invalid_argument, "run.duration_s must be >= 0");
}

std::vector<std::pair<std::string, std::string>> config_keys() {
  const RunConfig defaults;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : keys()) out.emplace_back(k.name, k.get(defaults));
  return out;
}

void apply_setting(RunConfig& config, const std::string& key, const std::string& value) {
  for (const auto& k : keys()) {
    if (k.name == key) {
      k.set(config, value);
      return;
    }
  }
  throw Error(ErrorKind::unknown_key, "unknown key '" + key + "'");
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw Error(ErrorKind::parse_error, where + "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error(ErrorKind::parse_error, where + "empty key");
    try {
      apply_setting(base, key, value);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::unknown_key) throw Error(ErrorKind::unknown_key, where + "unknown key '" + key + "'");
      throw Error(ErrorKind::parse_error, where + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

}  // namespace lidarscan
