#pragma once

// Linear models of a limited angle torquer (LAT) driving a mirror on flex
// pivots: third-order state space (angle, rate, current), the second-order
// model obtained by neglecting the electrical time constant, transfer
// function coefficients, modal data and frequency response.

#include "lidarscan/types.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace lidarscan {

struct ActuatorParams {
  double c = 0.0;   // pivot stiffness, N*m/rad
  double h = 0.0;   // viscous damping, N*m*s/rad
  double J = 0.0;   // inertia, kg*m^2
  double Rm = 0.0;  // winding resistance, Ohm
  double Kt = 0.0;  // torque sensitivity, N*m/A
  double Kb = 0.0;  // back-EMF constant, V/(rad/s)
  double Lm = 0.0;  // winding inductance, H
  double Tc = 0.0;  // Coulomb friction torque, N*m (0 = frictionless)

  /// Throws Error{invalid_params} naming the first violated bound.
  void validate() const;

  /// Electrical time constant Lm/Rm, s.
  double electrical_time_constant() const { return Lm / Rm; }
  /// Mechanical time constant sqrt(J/c), s; infinite when c == 0.
  double mechanical_time_constant() const;
  /// Te/TM; the second-order model is trustworthy when this is small.
  double simplification_ratio() const;
};

/// The slow, large-amplitude (horizontal) mirror actuator.
ActuatorParams large_mirror();
/// The fast, small-amplitude (vertical) mirror actuator.
ActuatorParams small_mirror();

enum class Correction { none, damping_x10, zero_pivot_stiffness };

Correction parse_correction(const std::string& name);
const char* to_string(Correction correction);

ActuatorParams apply_correction(const ActuatorParams& params, Correction correction);

struct LinearModel {
  int order = 0;
  Mat A;
  Vec B;
  RowVec C;
  double D = 0.0;
  std::vector<std::string> state_labels;
  // Physical constants the model was built from, when it came from an
  // actuator. Simulators use them for the current and torque channels.
  std::optional<ActuatorParams> origin;
};

LinearModel build_third_order(const ActuatorParams& params);
LinearModel build_simplified_second_order(const ActuatorParams& params);
/// Dispatches on order (2 or 3).
LinearModel build_model(const ActuatorParams& params, int order);

/// W(p) = K / (a0 p^n + ... + a_n), or for a stiffness-free actuator
/// W(p) = K / (p (a0 p^2 + a1 p + a2)) with `integrator` set.
struct TransferFunction {
  double K = 0.0;
  std::vector<double> denom;
  bool integrator = false;

  /// Full denominator polynomial in descending powers of p, including the
  /// factored integrator.
  std::vector<double> expanded_denominator() const;
  std::complex<double> evaluate(std::complex<double> p) const;
};

TransferFunction transfer_function(const ActuatorParams& params, int order);

struct ModalAnalysis {
  std::vector<std::complex<double>> eigenvalues;
  std::optional<double> natural_frequency;  // rad/s, order 2 only
  std::optional<double> damping_ratio;      // order 2 only
  std::optional<double> resonant_frequency_hz;

  bool all_real(double tol = 1e-9) const;
};

/// Characteristic polynomial det(sI - A), descending powers, leading 1.
std::vector<double> characteristic_polynomial(const Mat& A);

/// Roots of a monic-or-not real polynomial of degree <= 3 in closed form,
/// polished with Newton steps. Sorted by ascending |Re|, conjugates adjacent
/// with the positive imaginary part first.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

ModalAnalysis modal_analysis(const LinearModel& model);

struct BodePoint {
  double magnitude = 0.0;
  double phase = 0.0;  // rad, principal value
};

BodePoint bode_point(const LinearModel& model, double omega);

/// Steady-state response C(-A)^{-1}B + D. Undefined for singular A.
double dc_gain(const LinearModel& model);

}  // namespace lidarscan
