#include "epmech/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace epmech {

Mat3 exp_series(const Mat3& a, int terms) {
  Mat3 sum = Mat3::Identity();
  Mat3 term = Mat3::Identity();
  for (int n = 1; n < terms; ++n) {
    term = (term * a) / static_cast<double>(n);
    sum += term;
  }
  return sum;
}

CartesianState pendulum_cartesian_rhs(const CartesianState& s, const Vec3& g, double radius) {
  const double lambda = -(g.dot(s.x) + s.v.squaredNorm()) / (radius * radius);
  return {s.v, g + lambda * s.x};
}

CartesianTrajectory simulate_pendulum_cartesian(const CartesianState& init, const Vec3& g,
                                                double radius, const StepperConfig& cfg) {
  validate_stepper_config(cfg);
  if (radius <= 0.0) {
    throw std::invalid_argument("simulate_pendulum_cartesian: radius must be positive");
  }
  if (std::abs(init.x.norm() - radius) > 1e-9 * std::max(radius, 1.0)) {
    throw std::invalid_argument("simulate_pendulum_cartesian: initial position off the sphere");
  }
  if (std::abs(init.x.dot(init.v)) > 1e-9 * std::max(1.0, radius * init.v.norm())) {
    throw std::invalid_argument("simulate_pendulum_cartesian: initial velocity not tangent");
  }

  const auto rhs = [&](double, const Eigen::VectorXd& y) {
    const CartesianState s{y.head<3>(), y.tail<3>()};
    const CartesianState d = pendulum_cartesian_rhs(s, g, radius);
    Eigen::VectorXd dy(6);
    dy.head<3>() = d.x;
    dy.tail<3>() = d.v;
    return dy;
  };

  CartesianTrajectory traj;
  Eigen::VectorXd y(6);
  y.head<3>() = init.x;
  y.tail<3>() = init.v;

  const auto record = [&](double t) {
    traj.t.push_back(t);
    traj.states.push_back({y.head<3>(), y.tail<3>()});
  };
  record(0.0);

  const long long n_steps = std::llround(cfg.t_end / cfg.dt);
  for (long long k = 0; k < n_steps; ++k) {
    y = rk4_step(rhs, k * cfg.dt, y, cfg.dt);
    // Constraint repair: radial projection for x, tangential for v.  The
    // applied correction doubles as an accuracy monitor.
    const Vec3 x_raw = y.head<3>();
    const Vec3 v_raw = y.tail<3>();
    const Vec3 x_proj = radius * x_raw.normalized();
    const Vec3 xhat = x_proj / radius;
    const Vec3 v_proj = v_raw - v_raw.dot(xhat) * xhat;
    traj.max_projection = std::max(
        traj.max_projection, std::max((x_raw - x_proj).norm(), (v_raw - v_proj).norm()));
    y.head<3>() = x_proj;
    y.tail<3>() = v_proj;
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > 1e12) {
      throw BlowupError((k + 1) * cfg.dt, y.cwiseAbs().maxCoeff());
    }
    if ((k + 1) % cfg.record_every == 0) record((k + 1) * cfg.dt);
  }
  return traj;
}

ForceCheckResult fd_force_check(const SystemSpec& sys, const ConfigPoint& q,
                                const AlgebraVector& V, double eps) {
  if (!(eps >= 1e-8 && eps <= 1e-4)) {
    throw std::invalid_argument("fd_force_check: eps must lie in [1e-8, 1e-4]");
  }
  ForceCheckResult out;
  out.analytic = omega_force(sys, q, V).coeffs;
  out.finite_difference.resize(sys.algebra_dim);
  for (int k = 0; k < sys.algebra_dim; ++k) {
    Eigen::VectorXd dir = Eigen::VectorXd::Zero(sys.algebra_dim);
    dir[k] = eps;
    const double lp = sys.lbar(advance_config(q, dir), V);
    const double lm = sys.lbar(advance_config(q, -dir), V);
    out.finite_difference[k] = (lp - lm) / (2.0 * eps);
  }
  out.max_residual = (out.finite_difference - out.analytic).cwiseAbs().maxCoeff();
  return out;
}

Trajectory richardson_reference(const SystemSpec& sys, const EPState& init,
                                const StepperConfig& cfg, int refine) {
  if (refine < 2) throw std::invalid_argument("richardson_reference: refine must be >= 2");
  StepperConfig fine = cfg;
  fine.dt = cfg.dt / refine;
  if (fine.dt < 1e-8) {
    throw std::invalid_argument("richardson_reference: refined step below 1e-8");
  }
  fine.record_every = cfg.record_every * refine;
  if (fine.reorthonormalize_every > 0) fine.reorthonormalize_every *= refine;
  return simulate(sys, init, fine);
}

double discrete_action(const SystemSpec& sys, const Trajectory& traj) {
  if (traj.samples.size() < 2) {
    throw std::invalid_argument("discrete_action: need at least two samples");
  }
  double action = 0.0;
  double prev = sys.lbar(traj.samples[0].gamma, traj.samples[0].V);
  for (std::size_t i = 1; i < traj.samples.size(); ++i) {
    const double cur = sys.lbar(traj.samples[i].gamma, traj.samples[i].V);
    action += 0.5 * (traj.samples[i].t - traj.samples[i - 1].t) * (prev + cur);
    prev = cur;
  }
  return action;
}

double stationarity_delta(const SystemSpec& sys, const Trajectory& traj, double eps,
                          unsigned seed) {
  if (traj.samples.size() < 10) {
    throw std::invalid_argument("stationarity_delta: need at least ten samples");
  }
  const double t0 = traj.samples.front().t;
  const double T = traj.samples.back().t - t0;
  if (T <= 0.0) throw std::invalid_argument("stationarity_delta: degenerate time span");

  // Three sine modes with random directions; sin(j pi s) vanishes at both
  // endpoints, so the variation fixes them as the action principle requires.
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> amp(0.5, 1.0);
  std::vector<Eigen::VectorXd> modes;
  std::vector<double> a;
  for (int j = 0; j < 3; ++j) {
    Eigen::VectorXd m(sys.algebra_dim);
    for (int i = 0; i < m.size(); ++i) m[i] = u(rng);
    if (m.norm() < 1e-6) m.setOnes();
    modes.push_back(m.normalized());
    a.push_back(amp(rng));
  }
  const auto delta_at = [&](double t, bool derivative) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(sys.algebra_dim);
    const double s = (t - t0) / T;
    for (int j = 0; j < 3; ++j) {
      const double w = (j + 1) * std::numbers::pi;
      out += derivative ? a[j] * (w / T) * std::cos(w * s) * modes[j]
                        : a[j] * std::sin(w * s) * modes[j];
    }
    return out;
  };

  double action_base = 0.0, action_pert = 0.0;
  double prev_base = 0.0, prev_pert = 0.0;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const auto& smp = traj.samples[i];
    const AlgebraVector dw{delta_at(smp.t, false)};
    const AlgebraVector dwdot{delta_at(smp.t, true)};
    // Right (body) updates transport the velocity with -[delta, V]; the left
    // sphere action flips the commutator's sign.  Abelian brackets vanish.
    const double sign = std::holds_alternative<Rotation>(smp.gamma) ? -1.0 : 1.0;
    const ConfigPoint gamma_eps = advance_config(smp.gamma, eps * dw.coeffs);
    AlgebraVector v_eps = smp.V;
    v_eps.coeffs += eps * (dwdot.coeffs + sign * bracket(sys.sc, dw, smp.V).coeffs);

    const double lb = sys.lbar(smp.gamma, smp.V);
    const double lp = sys.lbar(gamma_eps, v_eps);
    if (i > 0) {
      const double h = smp.t - traj.samples[i - 1].t;
      action_base += 0.5 * h * (prev_base + lb);
      action_pert += 0.5 * h * (prev_pert + lp);
    }
    prev_base = lb;
    prev_pert = lp;
  }
  return action_pert - action_base;
}

StationarityResult stationarity_check(const SystemSpec& sys, const Trajectory& traj,
                                      unsigned seed) {
  StationarityResult r;
  r.delta_coarse = stationarity_delta(sys, traj, 1e-2, seed);
  r.delta_fine = stationarity_delta(sys, traj, 1e-3, seed);
  r.ratio = std::abs(r.delta_coarse) / std::max(std::abs(r.delta_fine), 1e-300);
  return r;
}

}  // namespace epmech
