#include "lidarscan/toc_solver.hpp"

#include <algorithm>
#include <cmath>

namespace lidarscan {

namespace {

constexpr int kGridPoints = 1000;

// The adjoint is parameterised by its terminal value psi_f, so that
// psi(t) = exp(A^T (tf - t)) psi_f only ever needs forward exponentials;
// exp(-A^T t) on the fast electrical mode overflows within 0.1 s.
// Row g(t) satisfies psi(t)^T B = g(t) psi_f.
Eigen::RowVectorXd switching_row(const LinearModel& model, double tf, double t) {
  const Mat E = matrix_exponential(Mat(model.A * (tf - t)));
  return Eigen::RowVectorXd((E * model.B).transpose());
}

struct Sample {
  double t;
  double sign;  // expected sign of psi^T B
  Eigen::RowVectorXd row;
};

// Unit vectors spread over the null-space sphere of dimension m.
std::vector<Eigen::VectorXd> directions(int m) {
  std::vector<Eigen::VectorXd> out;
  if (m == 1) {
    out.push_back(Eigen::VectorXd::Ones(1));
    out.push_back(-Eigen::VectorXd::Ones(1));
  } else if (m == 2) {
    for (int k = 0; k < 720; ++k) {
      const double a = 2.0 * kPi * k / 720.0;
      Eigen::VectorXd v(2);
      v << std::cos(a), std::sin(a);
      out.push_back(v);
    }
  } else {
    // Fibonacci sphere; higher dimensions never arise for order <= 3.
    const int count = 4000;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double r = std::sqrt(1.0 - z * z);
      Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
      v(0) = r * std::cos(golden * k);
      v(1) = r * std::sin(golden * k);
      v(2) = z;
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

PmpCertificate certify(const TocProblem& problem, const BangBangSolution& solution) {
  problem.validate();
  if (!solution.converged) {
    throw Error(ErrorKind::invalid_argument, "certify requires a converged solution");
  }
  const LinearModel& model = problem.model;
  const int n = model.order;
  PmpCertificate cert;
  const auto& tau = solution.intervals;
  if (tau.empty()) {
    cert.psi0 = Vec::Zero(n);
    cert.sign_match = true;
    return cert;
  }

  std::vector<double> switches;
  double t = 0.0;
  for (std::size_t k = 0; k + 1 < tau.size(); ++k) {
    t += tau[k];
    switches.push_back(t);
  }
  const double tf = solution.total_time;

  // Null space of the switch conditions.
  Eigen::MatrixXd basis;
  if (switches.empty()) {
    basis = Eigen::MatrixXd::Identity(n, n);
  } else {
    Eigen::MatrixXd R(static_cast<Eigen::Index>(switches.size()), n);
    for (std::size_t k = 0; k < switches.size(); ++k) {
      R.row(static_cast<Eigen::Index>(k)) = switching_row(model, tf, switches[k]);
    }
    for (Eigen::Index k = 0; k < R.rows(); ++k) R.row(k).normalize();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, sv(0));
    Eigen::Index rank = 0;
    for (Eigen::Index k = 0; k < sv.size(); ++k) rank += sv(k) > tol ? 1 : 0;
    if (rank == n) {
      throw Error(ErrorKind::certification_failed, "switch conditions admit only psi0 = 0");
    }
    basis = svd.matrixV().rightCols(n - rank);
  }

  // Dense grid plus interval midpoints; points hugging a switch are skipped
  // since the sign there is decided by rounding, not by the dynamics.
  std::vector<Sample> samples;
  const double guard = 1e-6 * tf;
  auto expected = [&](double time) { return solution.control_at(time) > 0.0 ? 1.0 : -1.0; };
  auto add = [&](double time) {
    for (double s : switches) {
      if (std::abs(time - s) <= guard) return;
    }
    samples.push_back({time, expected(std::min(time, tf * (1.0 - 1e-12))), switching_row(model, tf, time)});
  };
  for (int k = 0; k < kGridPoints; ++k) add(tf * k / (kGridPoints - 1.0));
  double start = 0.0;
  for (double d : tau) {
    add(start + 0.5 * d);
    start += d;
  }

  // Among candidate psi_f directions keep the one with the largest
  // worst-case normalised margin sign * psi^T B.
  double best_margin = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best;
  for (const Eigen::VectorXd& dir : directions(static_cast<int>(basis.cols()))) {
    const Eigen::VectorXd psi_f = basis * dir;
    double scale = 0.0;
    for (const auto& s : samples) scale = std::max(scale, std::abs(s.row.dot(psi_f)));
    if (scale == 0.0) continue;
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) margin = std::min(margin, s.sign * s.row.dot(psi_f) / scale);
    if (margin > best_margin) {
      best_margin = margin;
      best = psi_f;
    }
  }
  if (best.size() == 0) {
    throw Error(ErrorKind::certification_failed, "switching function vanishes identically");
  }
  // Report psi0 with unit norm and everything else on that scale.
  const Eigen::VectorXd psi0 =
      Eigen::MatrixXd(matrix_exponential(Mat(model.A.transpose() * tf))) * best;
  const double norm = psi0.norm();
  const Eigen::VectorXd psi_f = best / norm;
  cert.psi0 = Vec(psi0 / norm);
  cert.sign_match = best_margin > 0.0;
  for (double s : switches) cert.switch_residuals.push_back(switching_row(model, tf, s).dot(psi_f));
  const Vec xf = propagate_solution(model, problem.x0, solution);
  const double u_last = solution.control(tau.size() - 1);
  cert.M_value = psi_f.dot(Eigen::VectorXd(model.A * xf + model.B * u_last));
  if (!cert.sign_match && switches.empty()) {
    throw Error(ErrorKind::certification_failed, "no sign-consistent adjoint found");
  }
  return cert;
}

}  // namespace lidarscan
