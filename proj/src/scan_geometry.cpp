#include "lidarscan/scan_geometry.hpp"

#include <cmath>
#include <functional>

namespace lidarscan {

namespace {

using AngleSource = std::function<std::pair<double, double>(std::size_t index, double t)>;

std::vector<Pass> cut_passes(const ScanConfig& config, double duration, const AngleSource& angles) {
  config.validate();
  if (!(duration >= 0.0)) throw Error(ErrorKind::invalid_argument, "duration must be >= 0");
  std::vector<Pass> passes;
  if (duration == 0.0) return passes;
  const auto count = static_cast<std::size_t>(std::floor(duration / config.sample_period + 1e-9)) + 1;
  const auto pass_count =
      static_cast<std::size_t>(std::ceil(duration / config.pass_duration - 1e-9));
  passes.resize(pass_count);
  for (std::size_t k = 0; k < pass_count; ++k) {
    passes[k].index = static_cast<int>(k) + 1;
    passes[k].parity = k % 2 == 0 ? Parity::odd : Parity::even;
  }
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) * config.sample_period;
    const auto [lm, sm] = angles(i, t);
    const PlanePoint p = angles_to_plane(lm, sm, config);
    auto k = static_cast<std::size_t>(std::floor(t / config.pass_duration + 1e-9));
    k = std::min(k, pass_count - 1);
    passes[k].samples.push_back({t, rad_to_deg(lm), rad_to_deg(sm), p.x, p.y});
  }
  return passes;
}

}  // namespace

void ScanConfig::validate() const {
  if (!(range_m > 0.0)) throw Error(ErrorKind::invalid_argument, "range must be > 0");
  if (!(mirror_separation_m >= 0.0)) {
    throw Error(ErrorKind::invalid_argument, "mirror separation must be >= 0");
  }
  if (!(sample_period > 0.0)) throw Error(ErrorKind::invalid_argument, "sample period must be > 0");
  if (!(pass_duration > 0.0)) throw Error(ErrorKind::invalid_argument, "pass duration must be > 0");
  if (!(frequency_lm > 0.0) || !(frequency_sm > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "scan frequencies must be > 0");
  }
}

const char* to_string(Parity parity) { return parity == Parity::odd ? "odd" : "even"; }

PlanePoint angles_to_plane(double phi_lm, double phi_sm, const ScanConfig& config) {
  config.validate();
  const double a = 2.0 * phi_lm;
  const double b = 2.0 * phi_sm;
  if (!(std::abs(a) < kPi / 2.0) || !(std::abs(b) < kPi / 2.0)) {
    throw Error(ErrorKind::out_of_range, "doubled mirror angle reaches 90 degrees");
  }
  const double R = config.range_m;
  return {R * std::tan(a), (R / std::cos(a) + config.mirror_separation_m) * std::tan(b)};
}

SeparationFit calibrate_separation(const std::vector<ScanSample>& table, double range_m) {
  if (!(range_m > 0.0)) throw Error(ErrorKind::invalid_argument, "range must be > 0");
  // y - R tan(b)/cos(a) = d tan(b) is linear in d.
  double num = 0.0;
  double den = 0.0;
  std::size_t informative = 0;
  for (const auto& s : table) {
    const double a = 2.0 * deg_to_rad(s.phi_lm);
    const double tb = std::tan(2.0 * deg_to_rad(s.phi_sm));
    if (std::abs(tb) > 1e-12) ++informative;
    num += (s.y - range_m * tb / std::cos(a)) * tb;
    den += tb * tb;
  }
  if (informative == 0 || den < 1e-20) {
    throw Error(ErrorKind::degenerate_fit, "separation is unobservable when all small-mirror angles are zero");
  }
  if (informative < 10) {
    throw Error(ErrorKind::insufficient_data, "need at least 10 samples with a nonzero small-mirror angle");
  }
  SeparationFit fit;
  fit.separation_m = num / den;
  double sq = 0.0;
  for (const auto& s : table) {
    const double a = 2.0 * deg_to_rad(s.phi_lm);
    const double tb = std::tan(2.0 * deg_to_rad(s.phi_sm));
    const double r = (range_m / std::cos(a) + fit.separation_m) * tb - s.y;
    sq += r * r;
  }
  fit.rms_m = std::sqrt(sq / static_cast<double>(table.size()));
  return fit;
}

std::pair<double, double> ideal_angles(double t, const ScanConfig& config) {
  if (!(t >= 0.0)) throw Error(ErrorKind::invalid_argument, "time must be >= 0");
  return {config.amplitude_lm * std::cos(2.0 * kPi * config.frequency_lm * t),
          -config.amplitude_sm * std::sin(2.0 * kPi * config.frequency_sm * t)};
}

std::vector<Pass> generate_ideal_scan(const ScanConfig& config, double duration) {
  return cut_passes(config, duration,
                    [&](std::size_t, double t) { return ideal_angles(t, config); });
}

std::vector<Pass> generate_tracked_scan(const TrackingResult& large, const TrackingResult& small,
                                        const ScanConfig& config, double duration) {
  auto lookup = [&](const TrackingResult& r, double t) {
    const TimeSeries& s = r.series;
    if (s.rows() == 0) throw Error(ErrorKind::insufficient_data, "empty tracking record");
    const double pos = t / s.dt();
    const auto row = static_cast<std::size_t>(std::llround(pos));
    if (std::abs(pos - static_cast<double>(row)) > 1e-6) {
      throw Error(ErrorKind::insufficient_data, "tracking record does not sample the scan instants");
    }
    if (row >= s.rows()) throw Error(ErrorKind::insufficient_data, "tracking record shorter than the scan");
    return s[channel::phi][row];
  };
  return cut_passes(config, duration, [&](std::size_t, double t) {
    return std::pair{lookup(large, t), lookup(small, t)};
  });
}

std::vector<ScanSample> flatten(const std::vector<Pass>& passes) {
  std::vector<ScanSample> out;
  for (const auto& p : passes) out.insert(out.end(), p.samples.begin(), p.samples.end());
  return out;
}

}  // namespace lidarscan
