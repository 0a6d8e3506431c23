#include "lidarscan/toc_solver.hpp"

#include "lidarscan/parallel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lidarscan {

namespace {

// Intervals shorter than this are treated as absent when normalising.
constexpr double kZeroInterval = 1e-9;
// LM keeps polishing past the acceptance threshold down to this scaled error.
constexpr double kPolish = 1e-4;

double max_abs_scaled(const Vec& err, const Vec& accuracy) {
  double m = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) m = std::max(m, std::abs(err(i)) / accuracy(i));
  return m;
}

struct Shot {
  Vec x_end;
  Eigen::MatrixXd jac;  // d x_end / d tau
};

Shot evaluate(const TocProblem& p, const std::optional<ModalPropagator>& modal, int sign,
              const std::vector<double>& tau, bool with_jacobian) {
  const auto n = tau.size();
  std::vector<Vec> xs;
  std::vector<Mat> phis;
  xs.reserve(n + 1);
  phis.reserve(n);
  xs.push_back(p.x0);
  double u = sign * p.u0;
  for (std::size_t k = 0; k < n; ++k) {
    const Propagator step = modal ? modal->at(tau[k]) : Propagator(p.model, tau[k]);
    xs.push_back(step(xs.back(), u));
    phis.push_back(step.Phi());
    u = -u;
  }
  Shot out{xs.back(), {}};
  if (!with_jacobian) return out;
  const auto dim = p.model.order;
  out.jac = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(n));
  Eigen::MatrixXd tail = Eigen::MatrixXd::Identity(dim, dim);
  for (std::size_t kk = n; kk-- > 0;) {
    const double uk = (kk % 2 == 0 ? 1.0 : -1.0) * sign * p.u0;
    const Vec rate = p.model.A * xs[kk + 1] + p.model.B * uk;
    out.jac.col(static_cast<Eigen::Index>(kk)) = tail * rate;
    tail = tail * phis[kk];
  }
  return out;
}

BangBangSolution package(const TocProblem& p, int sign, std::vector<double> tau) {
  BangBangSolution s;
  s.initial_sign = sign;
  s.u0 = p.u0;
  s.intervals = std::move(tau);
  s.total_time = 0.0;
  for (double t : s.intervals) s.total_time += t;
  s.terminal_error = propagate_solution(p.model, p.x0, s) - p.xf;
  s.converged = max_abs_scaled(s.terminal_error, p.accuracy) <= 1.0;
  return s;
}

// Drops zero-length pieces: leading ones flip the initial sign, interior
// ones merge their equal-signed neighbours, trailing ones vanish.
BangBangSolution normalise(const TocProblem& p, const BangBangSolution& in) {
  int sign = in.initial_sign;
  std::vector<double> tau = in.intervals;
  bool changed = false;
  while (!tau.empty() && tau.front() < kZeroInterval) {
    tau.erase(tau.begin());
    sign = -sign;
    changed = true;
  }
  while (!tau.empty() && tau.back() < kZeroInterval) {
    tau.pop_back();
    changed = true;
  }
  for (std::size_t k = 1; k + 1 < tau.size();) {
    if (tau[k] < kZeroInterval) {
      tau[k - 1] += tau[k] + tau[k + 1];
      tau.erase(tau.begin() + static_cast<std::ptrdiff_t>(k), tau.begin() + static_cast<std::ptrdiff_t>(k) + 2);
      changed = true;
    } else {
      ++k;
    }
  }
  if (!changed) return in;
  return package(p, sign, std::move(tau));
}

double slow_time_scale(const LinearModel& model) {
  double slowest = std::numeric_limits<double>::infinity();
  for (const auto& l : polynomial_roots(characteristic_polynomial(model.A))) {
    const double m = std::abs(l);
    if (m > 1e-9) slowest = std::min(slowest, m);
  }
  return std::isfinite(slowest) ? 1.0 / slowest : 1.0;
}

}  // namespace

void TocProblem::validate() const {
  if (model.order < 1 || model.order > kMaxOrder) {
    throw Error(ErrorKind::invalid_argument, "model order must be 1..3");
  }
  const auto n = model.order;
  if (x0.size() != n || xf.size() != n || accuracy.size() != n) {
    throw Error(ErrorKind::invalid_argument, "x0, xf and accuracy must match the model order");
  }
  if (!(u0 > 0.0)) throw Error(ErrorKind::invalid_argument, "u0 must be > 0");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(accuracy(i) > 0.0)) throw Error(ErrorKind::invalid_argument, "accuracy must be > 0");
  }
}

bool TocProblem::has_complex_modes() const {
  ModalAnalysis m;
  m.eigenvalues = polynomial_roots(characteristic_polynomial(model.A));
  return !m.all_real();
}

Vec default_accuracy(int order) {
  Vec acc(order);
  const double full[3] = {deg_to_rad(1e-7), deg_to_rad(2e-5), 1e-5};
  for (int i = 0; i < order; ++i) acc(i) = full[i];
  return acc;
}

TocProblem make_problem(const LinearModel& model, double target_deg, double u0) {
  TocProblem p;
  p.model = model;
  p.x0 = Vec::Zero(model.order);
  p.xf = Vec::Zero(model.order);
  p.xf(0) = deg_to_rad(target_deg);
  p.u0 = u0;
  p.accuracy = default_accuracy(model.order);
  return p;
}

double BangBangSolution::control(std::size_t k) const {
  return (k % 2 == 0 ? 1.0 : -1.0) * initial_sign * u0;
}

double BangBangSolution::control_at(double t) const {
  double start = 0.0;
  for (std::size_t k = 0; k < intervals.size(); ++k) {
    const double end = start + intervals[k];
    if (t >= start && t < end) return control(k);
    start = end;
  }
  return 0.0;
}

Vec propagate_solution(const LinearModel& model, const Vec& x0, const BangBangSolution& s) {
  Vec x = x0;
  for (std::size_t k = 0; k < s.intervals.size(); ++k) {
    x = propagate_lti(model, x, s.control(k), s.intervals[k]);
  }
  return x;
}

BangBangSolution shoot(const TocProblem& p, const ShootingStart& start, int max_iterations) {
  const auto n = static_cast<Eigen::Index>(start.intervals.size());
  Eigen::VectorXd s(n);
  for (Eigen::Index k = 0; k < n; ++k) s(k) = std::sqrt(std::max(start.intervals[k], 0.0));

  auto taus = [](const Eigen::VectorXd& v) {
    std::vector<double> t(static_cast<std::size_t>(v.size()));
    for (Eigen::Index k = 0; k < v.size(); ++k) t[k] = v(k) * v(k);
    return t;
  };

  const auto modal = ModalPropagator::build(p.model);
  Shot shot = evaluate(p, modal, start.sign, taus(s), true);
  int budget = max_iterations;

  // Levenberg-Marquardt on the weighted residual w .* (x(tf) - xf).
  auto descend = [&](const Eigen::VectorXd& w, double tol) {
    Eigen::VectorXd r = w.asDiagonal() * Eigen::VectorXd(shot.x_end - p.xf);
    double cost = r.squaredNorm();
    double lambda = -1.0;
    while (budget > 0 && r.cwiseAbs().maxCoeff() > tol) {
      --budget;
      Eigen::MatrixXd J = w.asDiagonal() * shot.jac;
      for (Eigen::Index k = 0; k < n; ++k) J.col(k) *= 2.0 * s(k);
      const Eigen::MatrixXd JtJ = J.transpose() * J;
      const Eigen::VectorXd g = J.transpose() * r;
      const double dmax = std::max(1e-300, JtJ.diagonal().maxCoeff());
      const Eigen::VectorXd diag = JtJ.diagonal().cwiseMax(1e-30 * dmax);
      if (lambda < 0.0) lambda = 1e-3 * dmax;
      bool accepted = false;
      while (!accepted && lambda < 1e30 * dmax) {
        Eigen::MatrixXd H = JtJ;
        H.diagonal() += lambda * diag;
        const Eigen::VectorXd trial = s + H.ldlt().solve(-g);
        const Shot next = evaluate(p, modal, start.sign, taus(trial), true);
        const Eigen::VectorXd r_next = w.asDiagonal() * Eigen::VectorXd(next.x_end - p.xf);
        const double c_next = r_next.squaredNorm();
        if (std::isfinite(c_next) && c_next < cost) {
          s = trial;
          shot = next;
          r = r_next;
          cost = c_next;
          lambda = std::max(lambda / 3.0, 1e-30 * dmax);
          accepted = true;
        } else {
          lambda *= 4.0;
        }
      }
      if (!accepted) break;
    }
  };

  // First pass on a natural scale: the state reached by a full push over the
  // slow time constant, so no component dominates while far from the target.
  // The tolerance weights (up to 1e9 apart) only take over for polishing.
  const Vec push = propagate_lti(p.model, Vec::Zero(p.model.order), p.u0, slow_time_scale(p.model));
  const Eigen::VectorXd natural =
      (push.cwiseAbs() + (p.xf - p.x0).cwiseAbs() + p.accuracy).cwiseInverse();
  descend(natural, 1e-12);
  descend(p.accuracy.cwiseInverse(), kPolish);
  return package(p, start.sign, taus(s));
}

std::vector<ShootingStart> start_ladder(const TocProblem& p, bool extended) {
  const double t_slow = slow_time_scale(p.model);
  const std::vector<double> scales =
      extended ? std::vector<double>{0.04, 0.008, 0.0016, 3.2e-4, 6.4e-5}
               : std::vector<double>{0.2, 1.0, 5.0};
  std::vector<ShootingStart> starts;
  for (int n = p.model.order; n >= 1; --n) {
    for (int sign : {1, -1}) {
      for (double scale : scales) {
        std::vector<double> ladder(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) ladder[k] = scale * t_slow * std::pow(2.0, -k);
        starts.push_back({sign, ladder});
        std::reverse(ladder.begin(), ladder.end());
        starts.push_back({sign, ladder});
      }
    }
  }
  return starts;
}

std::size_t select_candidate(const std::vector<BangBangSolution>& c) {
  if (c.empty()) throw Error(ErrorKind::invalid_argument, "no candidates to select from");
  std::size_t best = 0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const BangBangSolution& a = c[k];
    const BangBangSolution& b = c[best];
    if (a.converged != b.converged) {
      if (a.converged) best = k;
      continue;
    }
    if (!a.converged) {
      if (a.terminal_error.cwiseAbs().maxCoeff() < b.terminal_error.cwiseAbs().maxCoeff()) best = k;
      continue;
    }
    if (a.total_time < b.total_time - 1e-9) {
      best = k;
    } else if (std::abs(a.total_time - b.total_time) <= 1e-9 &&
               a.intervals.size() < b.intervals.size()) {
      best = k;
    }
  }
  return best;
}

BangBangSolution solve(const TocProblem& p, const SolveOptions& options) {
  p.validate();
  if (max_abs_scaled(p.x0 - p.xf, p.accuracy) <= 1.0) {
    BangBangSolution s;
    s.u0 = p.u0;
    s.terminal_error = p.x0 - p.xf;
    s.converged = true;
    return s;
  }
  if (options.warm_start && !options.warm_start->intervals.empty()) {
    const ShootingStart ws{options.warm_start->initial_sign, options.warm_start->intervals};
    BangBangSolution s = normalise(p, shoot(p, ws, options.max_iterations));
    if (s.converged) return s;
  }
  std::vector<BangBangSolution> candidates;
  if (options.first_converged && !p.has_complex_modes()) {
    for (bool extended : {false, true}) {
      for (const auto& start : start_ladder(p, extended)) {
        candidates.push_back(normalise(p, shoot(p, start, options.max_iterations)));
        if (candidates.back().converged) return candidates.back();
      }
    }
    return candidates[select_candidate(candidates)];
  }
  for (bool extended : {false, true}) {
    const auto starts = start_ladder(p, extended);
    auto shots = options.parallel ? parallel::shoot_all(p, starts, options.max_iterations)
                                  : serial::shoot_all(p, starts, options.max_iterations);
    for (auto& s : shots) candidates.push_back(normalise(p, s));
    const bool any = std::any_of(candidates.begin(), candidates.end(),
                                 [](const BangBangSolution& s) { return s.converged; });
    if (any) break;
  }
  return candidates[select_candidate(candidates)];
}

double reach_time(const TocProblem& problem) {
  const BangBangSolution s = solve(problem);
  if (!s.converged) throw Error(ErrorKind::no_convergence, "no bang-bang solution reaches the target");
  return s.total_time;
}

std::string to_json(const BangBangSolution& s) {
  nlohmann::ordered_json j;
  j["initial_sign"] = s.initial_sign;
  j["intervals_s"] = s.intervals;
  j["total_time_s"] = s.total_time;
  std::vector<double> err(s.terminal_error.data(), s.terminal_error.data() + s.terminal_error.size());
  j["terminal_error"] = err;
  j["converged"] = s.converged;
  return j.dump(2);
}

std::string to_json(const PmpCertificate& c) {
  nlohmann::ordered_json j;
  j["psi0"] = std::vector<double>(c.psi0.data(), c.psi0.data() + c.psi0.size());
  j["switch_residuals"] = c.switch_residuals;
  j["sign_match"] = c.sign_match;
  j["M_value"] = c.M_value;
  return j.dump(2);
}

BangBangSolution solution_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  BangBangSolution s;
  try {
    s.initial_sign = j.at("initial_sign").get<int>();
    s.intervals = j.at("intervals_s").get<std::vector<double>>();
    s.total_time = j.at("total_time_s").get<double>();
    const auto err = j.at("terminal_error").get<std::vector<double>>();
    s.terminal_error = Vec::Zero(static_cast<Eigen::Index>(err.size()));
    for (std::size_t i = 0; i < err.size(); ++i) s.terminal_error(static_cast<Eigen::Index>(i)) = err[i];
    s.converged = j.at("converged").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse_error, e.what());
  }
  return s;
}

}  // namespace lidarscan
