#include "lidarscan/golden.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace lidarscan {

namespace {

ActuatorParams actuator(bool large, Correction correction) {
  return apply_correction(large ? large_mirror() : small_mirror(), correction);
}

LinearModel model_of(bool large, Correction correction, int order) {
  return build_model(actuator(large, correction), order);
}

// Eigenvalue of the model nearest to the expected one, so that ordering
// conventions do not matter.
std::complex<double> eigen_near(const LinearModel& model, std::complex<double> expected) {
  const auto eig = modal_analysis(model).eigenvalues;
  return *std::min_element(eig.begin(), eig.end(), [&](const auto& a, const auto& b) {
    return std::abs(a - expected) < std::abs(b - expected);
  });
}

struct Case {
  std::string tag;
  bool large;
  Correction correction;
};

void add_matrix(std::vector<GoldenValue>& out, const Case& c, int order, int row, int col,
                const std::string& printed) {
  const std::string name = c.tag + "/A" + std::to_string(order) + "(" + std::to_string(row) + "," +
                           std::to_string(col) + ")";
  out.push_back({name, printed, [=] { return model_of(c.large, c.correction, order).A(row, col); }});
}

void add_input(std::vector<GoldenValue>& out, const Case& c, int order, int row, const std::string& printed) {
  const std::string name = c.tag + "/B" + std::to_string(order) + "(" + std::to_string(row) + ")";
  out.push_back({name, printed, [=] { return model_of(c.large, c.correction, order).B(row); }});
}

void add_eigen(std::vector<GoldenValue>& out, const Case& c, int order, const std::string& re,
               const std::string& im = "") {
  const std::complex<double> expected(std::stod(re), im.empty() ? 0.0 : std::stod(im));
  const std::string name = c.tag + "/eig" + std::to_string(order) + "(" + re + (im.empty() ? "" : "+" + im + "j") + ")";
  out.push_back({name + ".re", re, [=] { return eigen_near(model_of(c.large, c.correction, order), expected).real(); }});
  if (!im.empty()) {
    out.push_back({name + ".im", im, [=] { return eigen_near(model_of(c.large, c.correction, order), expected).imag(); }});
  }
}

void add_tf(std::vector<GoldenValue>& out, const Case& c, int order, const std::string& K,
            const std::vector<std::string>& denom) {
  const std::string base = c.tag + "/tf" + std::to_string(order);
  out.push_back({base + ".K", K, [=] { return transfer_function(actuator(c.large, c.correction), order).K; }});
  for (std::size_t k = 0; k < denom.size(); ++k) {
    out.push_back({base + ".a" + std::to_string(k), denom[k],
                   [=] { return transfer_function(actuator(c.large, c.correction), order).denom[k]; }});
  }
}

void add_modal(std::vector<GoldenValue>& out, const Case& c, const std::string& T, const std::string& xi,
               const std::string& wn, const std::string& wr, const std::string& fr) {
  auto modal = [=] { return modal_analysis(model_of(c.large, c.correction, 2)); };
  out.push_back({c.tag + "/T2", T, [=] { return 1.0 / *modal().natural_frequency; }});
  out.push_back({c.tag + "/xi2", xi, [=] { return *modal().damping_ratio; }});
  out.push_back({c.tag + "/wn2", wn, [=] { return *modal().natural_frequency; }});
  out.push_back({c.tag + "/wR2", wr, [=] { return 2.0 * kPi * *modal().resonant_frequency_hz; }});
  out.push_back({c.tag + "/fR2", fr, [=] { return *modal().resonant_frequency_hz; }});
}

}  // namespace

double printed_tolerance(const std::string& printed) {
  std::string mantissa = printed;
  int exponent = 0;
  const auto e = printed.find_first_of("eE");
  if (e != std::string::npos) {
    mantissa = printed.substr(0, e);
    exponent = std::stoi(printed.substr(e + 1));
  }
  const auto dot = mantissa.find('.');
  const int decimals = dot == std::string::npos ? 0 : static_cast<int>(mantissa.size() - dot - 1);
  const double half_unit = 0.5 * std::pow(10.0, exponent - decimals);
  return std::max(half_unit, 5e-5 * std::abs(std::stod(printed)));
}

std::vector<GoldenValue> model_goldens() {
  std::vector<GoldenValue> out;
  const Case small{"small", false, Correction::none};
  const Case large{"large", true, Correction::none};
  const Case large_damped{"large_damping_x10", true, Correction::damping_x10};
  const Case large_free{"large_zero_stiffness", true, Correction::zero_pivot_stiffness};
  const Case small_free{"small_zero_stiffness", false, Correction::zero_pivot_stiffness};

  add_matrix(out, small, 3, 1, 0, "-17571");
  add_matrix(out, small, 3, 1, 1, "-42.857");
  add_matrix(out, small, 3, 1, 2, "404.29");
  add_matrix(out, small, 3, 2, 1, "-62.889");
  add_matrix(out, small, 3, 2, 2, "-1666.7");
  add_input(out, small, 3, 2, "222.22");
  add_tf(out, small, 3, "0.0030678", {"3.4146e-008", "5.8374e-005", "0.0039072", "1"});
  add_matrix(out, small, 2, 1, 0, "-17571");
  add_matrix(out, small, 2, 1, 1, "-58.11");
  add_input(out, small, 2, 1, "53.90");
  add_tf(out, small, 2, "0.0030678", {"5.6911e-005", "0.0033072", "1"});
  add_modal(out, small, "0.0075439", "0.2192", "132.56", "126.03", "20.058");
  add_eigen(out, small, 3, "-29.282", "129.93");
  add_eigen(out, small, 3, "-1651");
  add_eigen(out, small, 2, "-29.056", "129.33");

  add_matrix(out, large, 3, 1, 0, "-314.29");
  add_matrix(out, large, 3, 1, 1, "-4.0816");
  add_matrix(out, large, 3, 1, 2, "57.755");
  add_matrix(out, large, 3, 2, 1, "-62.889");
  add_matrix(out, large, 3, 2, 2, "-1666.7");
  add_input(out, large, 3, 2, "222.22");
  add_tf(out, large, 3, "0.0245", {"1.9091e-006", "0.00319", "0.0205", "1"});
  add_matrix(out, large, 2, 1, 0, "-314.29");
  add_matrix(out, large, 2, 1, 1, "-6.261");
  add_input(out, large, 2, 1, "7.7");
  add_tf(out, large, 2, "0.0245", {"0.003182", "0.01992", "1"});
  add_modal(out, large, "0.056408", "0.17658", "17.728", "17.166", "2.7321");
  add_eigen(out, large, 3, "-3.1345", "17.46");
  add_eigen(out, large, 3, "-1664.5");
  add_eigen(out, large, 2, "-3.1305", "17.45");

  add_matrix(out, large_damped, 2, 1, 1, "-42.996");
  add_eigen(out, large_damped, 2, "-9.3376");
  add_eigen(out, large_damped, 2, "-33.658");
  add_matrix(out, large_damped, 3, 1, 1, "-40.816");
  add_eigen(out, large_damped, 3, "-9.3329");
  add_eigen(out, large_damped, 3, "-33.72");
  add_eigen(out, large_damped, 3, "-1664.4");

  add_matrix(out, large_free, 3, 1, 0, "0");
  add_eigen(out, large_free, 3, "0");
  add_eigen(out, large_free, 3, "-6.2692");
  add_eigen(out, large_free, 3, "-1664.5");
  add_tf(out, large_free, 3, "1.23", {"9.5832e-005", "0.16011", "1"});

  add_matrix(out, small_free, 3, 1, 0, "0");
  add_eigen(out, small_free, 3, "0");
  add_eigen(out, small_free, 3, "-58.669");
  add_eigen(out, small_free, 3, "-1650.9");
  return out;
}

std::vector<TocGolden> toc_goldens() {
  const double large_target = 8.35;
  const double small_target = 3.57;
  return {
      {"table3_order2", true, Correction::damping_x10, 2, 10.0, large_target, {0.12713, 0.00652}, 0.13365},
      {"table3_order3", true, Correction::damping_x10, 3, 10.0, large_target, {0.12715, 0.00685, 0.00042}, 0.13441},
      {"table4_order2", true, Correction::damping_x10, 2, 20.0, large_target, {0.061457, 0.010919}, 0.072377},
      {"table4_order3", true, Correction::damping_x10, 3, 20.0, large_target, {0.061453, 0.011276, 0.000417}, 0.073145},
      {"table5", true, Correction::zero_pivot_stiffness, 3, 10.0, large_target, {0.04967, 0.038238, 0.00041643}, 0.088324},
      {"table6", true, Correction::zero_pivot_stiffness, 3, 20.0, large_target, {0.033801, 0.028293, 0.00041642}, 0.062511},
      {"table7", false, Correction::zero_pivot_stiffness, 3, 10.0, small_target, {0.014428, 0.008131, 0.000420}, 0.022978},
      {"table8", false, Correction::zero_pivot_stiffness, 3, 20.0, small_target, {0.009388, 0.006449, 0.000420}, 0.016257},
  };
}

const std::vector<ScanSample>& table2() {
  static const std::vector<ScanSample> rows = {
    {0.000, 8.35, 0.00, 60.00, 0.00},
    {0.004, 8.33, -1.72, 59.88, -12.57},
    {0.008, 8.28, -3.01, 59.50, -22.07},
    {0.012, 8.20, -3.56, 58.88, -26.10},
    {0.016, 8.09, -3.23, 58.01, -23.61},
    {0.020, 7.94, -2.10, 56.91, -15.28},
    {0.024, 7.76, -0.45, 55.57, -3.25},
    {0.028, 7.56, 1.31, 54.00, 9.52},
    {0.032, 7.32, 2.75, 52.22, 19.94},
    {0.036, 7.05, 3.51, 50.24, 25.41},
    {0.040, 6.76, 3.40, 48.05, 24.53},
    {0.044, 6.43, 2.44, 45.69, 17.57},
    {0.048, 6.09, 0.89, 43.15, 6.35},
    {0.052, 5.72, -0.89, 40.44, -6.33},
    {0.056, 5.32, -2.44, 37.59, -17.43},
    {0.060, 4.91, -3.40, 34.60, -24.20},
    {0.064, 4.47, -3.51, 31.49, -24.94},
    {0.068, 4.02, -2.75, 28.27, -19.48},
    {0.072, 3.56, -1.31, 24.95, -9.27},
    {0.076, 3.07, 0.45, 21.54, 3.15},
    {0.080, 2.58, 2.10, 18.06, 14.76},
    {0.084, 2.08, 3.23, 14.52, 22.74},
    {0.088, 1.56, 3.56, 10.93, 25.08},
    {0.092, 1.05, 3.01, 7.31, 21.17},
    {0.096, 0.52, 1.72, 3.66, 12.04},
    {0.100, 0.00, 0.00, 0.00, 0.00},
    {0.104, -0.52, -1.72, -3.66, -12.04},
    {0.108, -1.05, -3.01, -7.31, -21.17},
    {0.112, -1.56, -3.56, -10.93, -25.08},
    {0.116, -2.08, -3.23, -14.52, -22.74},
    {0.120, -2.58, -2.10, -18.06, -14.76},
    {0.124, -3.07, -0.45, -21.54, -3.15},
    {0.128, -3.56, 1.31, -24.95, 9.27},
    {0.132, -4.02, 2.75, -28.27, 19.48},
    {0.136, -4.47, 3.51, -31.49, 24.94},
    {0.140, -4.91, 3.40, -34.60, 24.20},
    {0.144, -5.32, 2.44, -37.59, 17.43},
    {0.148, -5.72, 0.89, -40.44, 6.33},
    {0.152, -6.09, -0.89, -43.15, -6.35},
    {0.156, -6.43, -2.44, -45.69, -17.57},
    {0.160, -6.76, -3.40, -48.05, -24.53},
    {0.164, -7.05, -3.51, -50.24, -25.41},
    {0.168, -7.32, -2.75, -52.22, -19.94},
    {0.172, -7.56, -1.31, -54.00, -9.52},
    {0.176, -7.76, 0.45, -55.57, 3.25},
    {0.180, -7.94, 2.10, -56.91, 15.28},
    {0.184, -8.09, 3.23, -58.01, 23.61},
    {0.188, -8.20, 3.56, -58.88, 26.10},
    {0.192, -8.28, 3.01, -59.50, 22.07},
    {0.196, -8.33, 1.72, -59.88, 12.57},
    {0.200, -8.35, 0.00, -60.00, 0.00},
    {0.204, -8.33, -1.72, -59.88, -12.57},
    {0.208, -8.28, -3.01, -59.50, -22.07},
    {0.212, -8.20, -3.56, -58.88, -26.10},
    {0.216, -8.09, -3.23, -58.01, -23.61},
    {0.220, -7.94, -2.10, -56.91, -15.28},
    {0.224, -7.76, -0.45, -55.57, -3.25},
    {0.228, -7.56, 1.31, -54.00, 9.52},
    {0.232, -7.32, 2.75, -52.22, 19.94},
    {0.236, -7.05, 3.51, -50.24, 25.41},
    {0.240, -6.76, 3.40, -48.05, 24.53},
    {0.244, -6.43, 2.44, -45.69, 17.57},
    {0.248, -6.09, 0.89, -43.15, 6.35},
    {0.252, -5.72, -0.89, -40.44, -6.33},
    {0.256, -5.32, -2.44, -37.59, -17.43},
    {0.260, -4.91, -3.40, -34.60, -24.20},
    {0.264, -4.47, -3.51, -31.49, -24.94},
    {0.268, -4.02, -2.75, -28.27, -19.48},
    {0.272, -3.56, -1.31, -24.95, -9.27},
    {0.276, -3.07, 0.45, -21.54, 3.15},
    {0.280, -2.58, 2.10, -18.06, 14.76},
    {0.284, -2.08, 3.23, -14.52, 22.74},
    {0.288, -1.56, 3.56, -10.93, 25.08},
    {0.292, -1.05, 3.01, -7.31, 21.17},
    {0.296, -0.52, 1.72, -3.66, 12.04},
    {0.300, 0.00, 0.00, 0.00, 0.00},
    {0.304, 0.52, -1.72, 3.66, -12.04},
    {0.308, 1.05, -3.01, 7.31, -21.17},
    {0.312, 1.56, -3.56, 10.93, -25.08},
    {0.316, 2.08, -3.23, 14.52, -22.74},
    {0.320, 2.58, -2.10, 18.06, -14.76},
    {0.324, 3.07, -0.45, 21.54, -3.15},
    {0.328, 3.56, 1.31, 24.95, 9.27},
    {0.332, 4.02, 2.75, 28.27, 19.48},
    {0.336, 4.47, 3.51, 31.49, 24.94},
    {0.340, 4.91, 3.40, 34.60, 24.20},
    {0.344, 5.32, 2.44, 37.59, 17.43},
    {0.348, 5.72, 0.89, 40.44, 6.33},
    {0.352, 6.09, -0.89, 43.15, -6.35},
    {0.356, 6.43, -2.44, 45.69, -17.57},
    {0.360, 6.76, -3.40, 48.05, -24.53},
    {0.364, 7.05, -3.51, 50.24, -25.41},
    {0.368, 7.32, -2.75, 52.22, -19.94},
    {0.372, 7.56, -1.31, 54.00, -9.52},
    {0.376, 7.76, 0.45, 55.57, 3.25},
    {0.380, 7.94, 2.10, 56.91, 15.28},
    {0.384, 8.09, 3.23, 58.01, 23.61},
    {0.388, 8.20, 3.56, 58.88, 26.10},
    {0.392, 8.28, 3.01, 59.50, 22.07},
    {0.396, 8.33, 1.72, 59.88, 12.57},
    {0.400, 8.35, 0.00, 60.00, 0.00},
  };
  return rows;
}

ScanSample table9_row() { return {1.0, -8.394, 2.740, -60.340, 20.070}; }

ScanSample table10_row() { return {1.0, -8.152, 0.100, -58.496, 0.727}; }

}  // namespace lidarscan
