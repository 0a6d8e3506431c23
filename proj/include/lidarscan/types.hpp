#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lidarscan {

// State dimension never exceeds 3; the +1 leaves room for the augmented
// [A B; 0 0] block used by exact constant-input propagation.
inline constexpr int kMaxOrder = 3;

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxOrder + 1, kMaxOrder + 1>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxOrder + 1, 1>;
using RowVec = Eigen::Matrix<double, 1, Eigen::Dynamic, Eigen::RowMajor, 1, kMaxOrder + 1>;
using CMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxOrder + 1,
                           kMaxOrder + 1>;
using CVec = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, 1, 0, kMaxOrder + 1, 1>;

enum class ErrorKind {
  invalid_params,
  unsupported_combination,
  singular_frequency,
  step_too_large,
  out_of_range,
  degenerate_fit,
  insufficient_data,
  certification_failed,
  mismatched_grids,
  not_steady,
  parse_error,
  unknown_key,
  invalid_argument,
  no_convergence,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline constexpr double kPi = std::numbers::pi;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace lidarscan
