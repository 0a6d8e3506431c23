#include "lidarscan/sim_engine.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace lidarscan {

Mat matrix_exponential(const Mat& M) {
  const Eigen::MatrixXd dense = M;
  return Mat(dense.exp());
}

namespace {

Mat augmented(const LinearModel& model, double tau) {
  const auto n = model.order;
  Mat M = Mat::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = model.A * tau;
  M.topRightCorner(n, 1) = model.B * tau;
  return M;
}

}  // namespace

Vec propagate_lti(const LinearModel& model, const Vec& x0, double u, double tau) {
  if (!(tau >= 0.0)) throw Error(ErrorKind::invalid_argument, "propagation time must be >= 0");
  if (tau == 0.0) return x0;
  const Propagator step(model, tau);
  return step(x0, u);
}

Propagator::Propagator(const LinearModel& model, double tau) : tau_(tau) {
  const auto n = model.order;
  const Mat E = matrix_exponential(augmented(model, tau));
  Phi_ = E.topLeftCorner(n, n);
  Gamma_ = E.topRightCorner(n, 1);
}

std::optional<ModalPropagator> ModalPropagator::build(const LinearModel& model) {
  const Eigen::MatrixXd A = model.A;
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  if (es.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXcd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > 1e-12 * scale) return std::nullopt;
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(ev(i) - ev(j)) < 1e-6 * scale) return std::nullopt;
    }
  }
  const Eigen::MatrixXd V = es.eigenvectors().real();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(V);
  if (!lu.isInvertible()) return std::nullopt;
  const Eigen::MatrixXd Vinv = lu.inverse();
  if (V.norm() * Vinv.norm() > 1e8) return std::nullopt;
  ModalPropagator m;
  m.V_ = V;
  m.Vinv_ = Vinv;
  m.lambda_ = ev.real();
  m.b_ = Vinv * model.B;
  return m;
}

Propagator ModalPropagator::at(double tau) const {
  const auto n = lambda_.size();
  Vec e(n);
  Vec g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = lambda_(i) * tau;
    e(i) = std::exp(z);
    g(i) = (z == 0.0 ? tau : std::expm1(z) / lambda_(i)) * b_(i);
  }
  Mat Phi = V_ * e.asDiagonal() * Vinv_;
  Vec Gamma = V_ * g;
  return Propagator(std::move(Phi), std::move(Gamma), tau);
}

}  // namespace lidarscan
