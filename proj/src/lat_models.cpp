#include "lidarscan/lat_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lidarscan {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_params: return "invalid-params";
    case ErrorKind::unsupported_combination: return "unsupported-combination";
    case ErrorKind::singular_frequency: return "singular-frequency";
    case ErrorKind::step_too_large: return "step-too-large";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::degenerate_fit: return "degenerate-fit";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::certification_failed: return "certification-failed";
    case ErrorKind::mismatched_grids: return "mismatched-grids";
    case ErrorKind::not_steady: return "not-steady";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::unknown_key: return "unknown-key";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::no_convergence: return "no-convergence";
  }
  return "error";
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorKind::invalid_params, what);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void ActuatorParams::validate() const {
  require(finite(c) && finite(h) && finite(J) && finite(Rm) && finite(Kt) && finite(Kb) &&
              finite(Lm) && finite(Tc),
          "all parameters must be finite");
  require(J > 0.0, "J must be > 0");
  require(Rm > 0.0, "Rm must be > 0");
  require(Lm > 0.0, "Lm must be > 0");
  require(Kt > 0.0, "Kt must be > 0");
  require(Kb >= 0.0, "Kb must be >= 0");
  require(h >= 0.0, "h must be >= 0");
  require(c >= 0.0, "c must be >= 0");
  require(Tc >= 0.0, "Tc must be >= 0");
}

double ActuatorParams::mechanical_time_constant() const {
  if (c == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(J / c);
}

double ActuatorParams::simplification_ratio() const {
  return electrical_time_constant() / mechanical_time_constant();
}

ActuatorParams large_mirror() {
  return ActuatorParams{.c = 1.54, .h = 0.02, .J = 4.9e-3, .Rm = 7.5, .Kt = 0.283, .Kb = 0.283,
                        .Lm = 4.5e-3, .Tc = 0.0};
}

ActuatorParams small_mirror() {
  return ActuatorParams{.c = 12.3, .h = 0.03, .J = 0.7e-3, .Rm = 7.5, .Kt = 0.283, .Kb = 0.283,
                        .Lm = 4.5e-3, .Tc = 0.0};
}

Correction parse_correction(const std::string& name) {
  if (name == "none") return Correction::none;
  if (name == "damping_x10") return Correction::damping_x10;
  if (name == "zero_pivot_stiffness") return Correction::zero_pivot_stiffness;
  throw Error(ErrorKind::invalid_argument, "unknown correction '" + name + "'");
}

const char* to_string(Correction correction) {
  switch (correction) {
    case Correction::none: return "none";
    case Correction::damping_x10: return "damping_x10";
    case Correction::zero_pivot_stiffness: return "zero_pivot_stiffness";
  }
  return "none";
}

ActuatorParams apply_correction(const ActuatorParams& params, Correction correction) {
  ActuatorParams out = params;
  switch (correction) {
    case Correction::none: break;
    case Correction::damping_x10: out.h = 10.0 * params.h; break;
    case Correction::zero_pivot_stiffness: out.c = 0.0; break;
  }
  return out;
}

LinearModel build_third_order(const ActuatorParams& p) {
  p.validate();
  LinearModel m;
  m.order = 3;
  m.A = Mat::Zero(3, 3);
  m.A << 0.0, 1.0, 0.0,
         -p.c / p.J, -p.h / p.J, p.Kt / p.J,
         0.0, -p.Kb / p.Lm, -p.Rm / p.Lm;
  m.B = Vec::Zero(3);
  m.B(2) = 1.0 / p.Lm;
  m.C = RowVec::Zero(3);
  m.C(0) = 1.0;
  m.D = 0.0;
  m.state_labels = {"phi", "omega", "i"};
  m.origin = p;
  return m;
}

LinearModel build_simplified_second_order(const ActuatorParams& p) {
  p.validate();
  LinearModel m;
  m.order = 2;
  m.A = Mat::Zero(2, 2);
  m.A << 0.0, 1.0,
         -p.c / p.J, -(p.Kb * p.Kt) / (p.Rm * p.J) - p.h / p.J;
  m.B = Vec::Zero(2);
  m.B(1) = p.Kt / (p.Rm * p.J);
  m.C = RowVec::Zero(2);
  m.C(0) = 1.0;
  m.D = 0.0;
  m.state_labels = {"phi", "omega"};
  m.origin = p;
  return m;
}

LinearModel build_model(const ActuatorParams& params, int order) {
  if (order == 3) return build_third_order(params);
  if (order == 2) return build_simplified_second_order(params);
  throw Error(ErrorKind::invalid_argument, "model order must be 2 or 3");
}

std::vector<double> TransferFunction::expanded_denominator() const {
  std::vector<double> d = denom;
  if (integrator) d.push_back(0.0);
  return d;
}

std::complex<double> TransferFunction::evaluate(std::complex<double> p) const {
  std::complex<double> acc = 0.0;
  for (double a : expanded_denominator()) acc = acc * p + a;
  return K / acc;
}

TransferFunction transfer_function(const ActuatorParams& p, int order) {
  p.validate();
  if (order != 2 && order != 3) {
    throw Error(ErrorKind::invalid_argument, "transfer function order must be 2 or 3");
  }
  const double Te = p.Lm / p.Rm;
  TransferFunction tf;
  if (p.c > 0.0) {
    tf.K = p.Kt / (p.Rm * p.c);
    if (order == 3) {
      tf.denom = {Te * p.J / p.c, Te * p.h / p.c + p.J / p.c,
                  Te + p.h / p.c + p.Kt * p.Kb / (p.Rm * p.c), 1.0};
    } else {
      tf.denom = {p.J / p.c, p.h / p.c + p.Kt * p.Kb / (p.Rm * p.c), 1.0};
    }
    return tf;
  }
  if (order == 2) {
    throw Error(ErrorKind::unsupported_combination,
                "zero pivot stiffness has only a third-order transfer function");
  }
  // Kt / (p (Lm J p^2 + (Rm J + Lm h) p + Rm h + Kt Kb)), normalised so the
  // constant term of the quadratic factor is 1.
  const double norm = p.Rm * p.h + p.Kt * p.Kb;
  if (!(norm > 0.0)) {
    throw Error(ErrorKind::unsupported_combination,
                "zero stiffness with h == 0 and Kb == 0 is a double integrator");
  }
  tf.K = p.Kt / norm;
  tf.denom = {p.Lm * p.J / norm, (p.Rm * p.J + p.Lm * p.h) / norm, 1.0};
  tf.integrator = true;
  return tf;
}

bool ModalAnalysis::all_real(double tol) const {
  return std::all_of(eigenvalues.begin(), eigenvalues.end(), [tol](const auto& l) {
    return std::abs(l.imag()) <= tol * std::max(1.0, std::abs(l));
  });
}

std::vector<double> characteristic_polynomial(const Mat& A) {
  const auto n = A.rows();
  if (n == 1) return {1.0, -A(0, 0)};
  if (n == 2) return {1.0, -A.trace(), A.determinant()};
  if (n == 3) {
    const double minors = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0) + A(0, 0) * A(2, 2) -
                          A(0, 2) * A(2, 0) + A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1);
    return {1.0, -A.trace(), minors, -A.determinant()};
  }
  throw Error(ErrorKind::invalid_argument, "characteristic polynomial supports order <= 3");
}

namespace {

using cd = std::complex<double>;

cd horner(const std::vector<double>& c, cd x) {
  cd acc = 0.0;
  for (double a : c) acc = acc * x + a;
  return acc;
}

cd horner_derivative(const std::vector<double>& c, cd x) {
  cd acc = 0.0;
  const auto n = c.size() - 1;
  for (std::size_t k = 0; k < n; ++k) acc = acc * x + c[k] * static_cast<double>(n - k);
  return acc;
}

cd polish(const std::vector<double>& c, cd x) {
  for (int it = 0; it < 8; ++it) {
    const cd f = horner(c, x);
    const cd df = horner_derivative(c, x);
    if (df == 0.0) break;
    const cd step = f / df;
    x -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

std::vector<cd> quadratic_roots(double a, double b, double c) {
  if (a == 0.0) {
    if (b == 0.0) return {};
    return {cd(-c / b, 0.0)};
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q == 0.0) return {cd(0.0), cd(0.0)};
    return {cd(q / a), cd(c / q)};
  }
  const double re = -b / (2.0 * a);
  const double im = std::sqrt(-disc) / (2.0 * a);
  return {cd(re, std::abs(im)), cd(re, -std::abs(im))};
}

double real_cubic_root(double a, double b, double c) {
  // x^3 + a x^2 + b x + c, depressed by x = t - a/3.
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  double t;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    t = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
  } else if (p == 0.0) {
    t = 0.0;
  } else {
    // Three real roots: take the one of largest magnitude for stable deflation.
    const double r = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    double best = 0.0;
    for (int k = 0; k < 3; ++k) {
      const double tk = r * std::cos(phi - 2.0 * kPi * k / 3.0);
      if (std::abs(tk - a / 3.0) > std::abs(best - a / 3.0) || k == 0) best = tk;
    }
    t = best;
  }
  return t - a / 3.0;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.front() == 0.0) c.erase(c.begin());
  if (c.size() <= 1) return {};
  const double lead = c.front();
  for (double& v : c) v /= lead;

  std::vector<cd> roots;
  if (c.size() == 2) {
    roots = {cd(-c[1], 0.0)};
  } else if (c.size() == 3) {
    roots = quadratic_roots(1.0, c[1], c[2]);
  } else if (c.size() == 4) {
    double r = real_cubic_root(c[1], c[2], c[3]);
    r = polish(c, cd(r, 0.0)).real();
    // Deflate: x^3 + a x^2 + b x + k = (x - r)(x^2 + b1 x + b0).
    const double b1 = c[1] + r;
    const double b0 = c[2] + r * b1;
    roots = quadratic_roots(1.0, b1, b0);
    roots.push_back(cd(r, 0.0));
  } else {
    throw Error(ErrorKind::invalid_argument, "closed-form roots support degree <= 3");
  }

  for (auto& r : roots) {
    const bool was_real = r.imag() == 0.0;
    r = polish(c, r);
    if (was_real) r = cd(r.real(), 0.0);
  }
  // Re-impose exact conjugate symmetry after polishing.
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    if (roots[i].imag() != 0.0 && std::abs(roots[i] - std::conj(roots[i + 1])) <=
                                      1e-9 * std::max(1.0, std::abs(roots[i]))) {
      const cd avg = 0.5 * (roots[i] + std::conj(roots[i + 1]));
      roots[i] = cd(avg.real(), std::abs(avg.imag()));
      roots[i + 1] = std::conj(roots[i]);
    }
  }
  std::stable_sort(roots.begin(), roots.end(), [](const cd& x, const cd& y) {
    if (std::abs(x.real()) != std::abs(y.real())) return std::abs(x.real()) < std::abs(y.real());
    return x.imag() > y.imag();
  });
  return roots;
}

ModalAnalysis modal_analysis(const LinearModel& model) {
  ModalAnalysis out;
  out.eigenvalues = polynomial_roots(characteristic_polynomial(model.A));
  if (model.order == 2) {
    const double wn2 = model.A.determinant();
    if (wn2 > 0.0) {
      const double wn = std::sqrt(wn2);
      const double xi = -model.A.trace() / (2.0 * wn);
      out.natural_frequency = wn;
      out.damping_ratio = xi;
      if (xi < 1.0 / std::sqrt(2.0)) {
        out.resonant_frequency_hz = wn * std::sqrt(1.0 - 2.0 * xi * xi) / (2.0 * kPi);
      }
    }
  }
  return out;
}

BodePoint bode_point(const LinearModel& model, double omega) {
  if (!(omega >= 0.0)) throw Error(ErrorKind::invalid_argument, "omega must be >= 0");
  const cd jw(0.0, omega);
  for (const cd& l : polynomial_roots(characteristic_polynomial(model.A))) {
    if (std::abs(l - jw) <= 1e-12 * std::max(1.0, std::abs(l))) {
      std::ostringstream msg;
      msg << "j*" << omega << " is an eigenvalue of A";
      throw Error(ErrorKind::singular_frequency, msg.str());
    }
  }
  const auto n = model.order;
  CMat M = -model.A.cast<cd>();
  for (int i = 0; i < n; ++i) M(i, i) += jw;
  const CVec x = M.partialPivLu().solve(model.B.cast<cd>());
  const cd g = (model.C.cast<cd>() * x)(0) + model.D;
  return BodePoint{std::abs(g), std::arg(g)};
}

double dc_gain(const LinearModel& model) {
  const Vec x = model.A.partialPivLu().solve(model.B);
  return -(model.C * x)(0) + model.D;
}

}  // namespace lidarscan
