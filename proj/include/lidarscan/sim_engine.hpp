#pragma once

// Time-domain simulation of the actuator models: exact propagation under a
// constant input, fixed-step RK4 integration of the linear models, and a
// hybrid stick/slip integrator for the model with Coulomb friction.

#include "lidarscan/lat_models.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lidarscan {

/// exp(A*tau) computed on the matrix itself.
Mat matrix_exponential(const Mat& M);

/// exp(A tau) x0 + int_0^tau exp(A s) ds B u, exact for constant u and valid
/// for singular A (evaluated through the augmented block [A B; 0 0]).
Vec propagate_lti(const LinearModel& model, const Vec& x0, double u, double tau);

/// Discrete transition pair for a fixed step, reused across many steps.
class Propagator {
 public:
  Propagator() = default;
  Propagator(const LinearModel& model, double tau);
  Propagator(Mat Phi, Vec Gamma, double tau) : Phi_(std::move(Phi)), Gamma_(std::move(Gamma)), tau_(tau) {}

  Vec operator()(const Vec& x, double u) const { return Phi_ * x + Gamma_ * u; }
  const Mat& Phi() const { return Phi_; }
  const Vec& Gamma() const { return Gamma_; }
  double tau() const { return tau_; }

 private:
  Mat Phi_;
  Vec Gamma_;
  double tau_ = 0.0;
};

/// Closed-form transition pairs from the eigendecomposition of A. Only
/// available when the eigenvalues are real, distinct and well conditioned.
class ModalPropagator {
 public:
  static std::optional<ModalPropagator> build(const LinearModel& model);
  Propagator at(double tau) const;

 private:
  Mat V_;
  Mat Vinv_;
  Vec lambda_;
  Vec b_;  // Vinv * B
};

enum class InputKind { step, sinusoid, square, piecewise_constant, sampled };

/// Open-loop voltage input. Held kinds (step, square, piecewise_constant,
/// sampled) are right-continuous: u(t) = u(t + 0) at each breakpoint.
struct InputSignal {
  InputKind kind = InputKind::step;
  double amplitude = 0.0;     // V
  double frequency_hz = 0.0;  // periodic kinds
  double phase = 0.0;         // rad
  double offset = 0.0;        // V
  std::vector<double> breakpoints;  // piecewise_constant: interval starts; sampled: [period]
  std::vector<double> values;

  static InputSignal step_of(double amplitude);
  static InputSignal cosine(double amplitude, double frequency_hz, double phase = 0.0);
  static InputSignal square_of(double amplitude, double frequency_hz);
  static InputSignal piecewise(std::vector<double> starts, std::vector<double> values);
  static InputSignal sampled_of(double period, std::vector<double> values);

  void validate() const;
  bool held() const { return kind != InputKind::sinusoid; }
  double at(double t) const;
};

namespace channel {
inline constexpr std::string_view phi = "phi_rad";
inline constexpr std::string_view omega = "omega_rad_s";
inline constexpr std::string_view current = "i_A";
inline constexpr std::string_view input = "u_V";
inline constexpr std::string_view torque_linear = "T_RL_Nm";
inline constexpr std::string_view torque_friction = "T_CF_Nm";
inline constexpr std::string_view torque_net = "T_R_Nm";
inline constexpr std::string_view stick = "stick_flag";
}  // namespace channel

/// Uniformly sampled multi-channel record. Every channel has rows() entries.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(double dt, double t0, std::vector<std::string> names);

  double dt() const { return dt_; }
  double t0() const { return t0_; }
  double time(std::size_t row) const { return t0_ + dt_ * static_cast<double>(row); }
  std::size_t rows() const { return columns_.empty() ? 0 : columns_.front().size(); }
  const std::vector<std::string>& names() const { return names_; }

  bool has(std::string_view name) const;
  std::size_t index(std::string_view name) const;
  const std::vector<double>& operator[](std::string_view name) const;
  std::vector<double>& operator[](std::string_view name);
  const std::vector<double>& column(std::size_t i) const { return columns_[i]; }

  void reserve(std::size_t rows);
  void push_row(const std::vector<double>& row);
  /// Appends a channel; must match rows() unless the series is empty.
  void add_channel(std::string name, std::vector<double> values);

 private:
  double dt_ = 0.0;
  double t0_ = 0.0;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
};

/// The default channel set written by both integrators.
std::vector<std::string> plant_channels();

/// Velocity band treated as "at rest" by the stick test, rad/s.
inline constexpr double kOmegaEps = 1e-9;

struct FrictionTorque {
  double T_CF = 0.0;
  bool sticking = false;
};

FrictionTorque friction_torque(double omega, double T_RL, double Tc);

/// Largest dt accepted by the integrators: 0.1 / |fastest eigenvalue|.
double max_stable_step(const LinearModel& model);

TimeSeries integrate_linear(const LinearModel& model, const Vec& x0, const InputSignal& input,
                            double dt, double duration);

/// Hybrid stick/slip plant built on the third-order model. Keeps the
/// sticking mode between steps so closed-loop simulators can drive it one
/// control period at a time.
class FrictionPlant {
 public:
  FrictionPlant(const LinearModel& model, const ActuatorParams& params, const Vec& x0);

  const Vec& state() const { return x_; }
  bool sticking() const { return sticking_; }

  /// Advances by dt under input u(t); u is sampled at RK4 stage times.
  template <class InputFn>
  void step(double t, double dt, const InputFn& u);
  void step_constant(double dt, double u);

  /// Torque channels at the current state.
  double linear_torque() const;
  FrictionTorque friction() const;

 private:
  Vec derivative(const Vec& x, double u, double direction) const;
  double electrical_rate(double i, double u) const;
  template <class InputFn>
  void slide(double t, double dt, const InputFn& u, double direction, int depth);
  template <class InputFn>
  void stick(double t, double dt, const InputFn& u);

  LinearModel model_;
  ActuatorParams params_;
  Vec x_;
  bool sticking_ = false;
};

TimeSeries integrate_friction(const LinearModel& model, const ActuatorParams& params,
                              const Vec& x0, const InputSignal& input, double dt,
                              double duration);

/// Appends one value to each plant channel (phi, omega, i, u, torques,
/// stick); other channels of the series are left to the caller.
/// Current and torque channels come from model.origin (NaN without it);
/// a null friction pointer records a frictionless sample.
void record_plant_row(TimeSeries& series, const LinearModel& model, const Vec& x, double u,
                      const FrictionTorque* friction);

/// Steady step output for u = (Tc*Rm/Kt + u0)*1(t), degrees, for each u0.
std::vector<double> friction_step_plateaus(const ActuatorParams& params,
                                           const std::vector<double>& u0s, double dt,
                                           double duration);

/// Result of calibrate_friction on the large mirror over u0 in {1,2,3,4}
/// against 2.2026 deg/V; used for both actuators.
inline constexpr double kCalibratedTc = 0.042896;  // N*m

struct FrictionCalibration {
  double Tc = 0.0;
  double rms_residual_deg = 0.0;
  std::vector<double> plateaus_deg;
};

/// Least-squares pick of Tc so the friction step plateaus follow
/// slope_deg_per_volt * u0 over the given u0 values.
FrictionCalibration calibrate_friction(const ActuatorParams& params,
                                       const std::vector<double>& u0s,
                                       double slope_deg_per_volt, double dt = 1e-5,
                                       double duration = 3.0);

}  // namespace lidarscan

#include "lidarscan/detail/friction_plant.ipp"
