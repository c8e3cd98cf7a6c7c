#include "epmech/integrators.hpp"

#include <cmath>

namespace epmech {

namespace {

constexpr double kBlowupThreshold = 1e12;

void check_finite(double t, const Eigen::VectorXd& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || std::abs(v[i]) > kBlowupThreshold) {
      throw BlowupError(t, v[i]);
    }
  }
}

Eigen::VectorXd dexpinv_config(const ConfigPoint& q, const Eigen::VectorXd& sigma,
                               const Eigen::VectorXd& A) {
  if (std::holds_alternative<Rotation>(q)) {
    return Eigen::VectorXd(dexpinv_body(Vec3(sigma), Vec3(A)));
  }
  if (std::holds_alternative<SpherePoint>(q)) {
    return Eigen::VectorXd(dexpinv_spatial(Vec3(sigma), Vec3(A)));
  }
  return A;
}

}  // namespace

EPRates ep_rhs(const SystemSpec& sys, const EPState& state) {
  EPRates out;
  // coadjoint drift: with <ad*_V xi, X> = -<xi, [V, X]> the Euler-Poincare
  // momentum equation reads dmu/dt = -ad*_V mu + Omega(x, V); on so(3) the
  // drift is mu cross V (classical rigid-body form)
  out.dmu = -ad_star(sys.sc, state.V, state.mu) + omega_force(sys, state.gamma, state.V);
  out.dgamma = sys.anchor(state.gamma, state.V);
  return out;
}

DualVector lie_poisson_rhs(const SystemSpec& sys, const DualVector& xi) {
  if (!sys.has_hamiltonian_h() || !sys.dh) {
    throw std::invalid_argument("lie_poisson_rhs: system '" + sys.id +
                                "' has no reduced Hamiltonian on the dual algebra");
  }
  return -ad_star(sys.sc, sys.dh(xi), xi);
}

Eigen::VectorXd rk4_step(const std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)>& f,
                         double t, const Eigen::VectorXd& y, double dt) {
  const Eigen::VectorXd k1 = f(t, y);
  const Eigen::VectorXd k2 = f(t + 0.5 * dt, y + 0.5 * dt * k1);
  const Eigen::VectorXd k3 = f(t + 0.5 * dt, y + 0.5 * dt * k2);
  const Eigen::VectorXd k4 = f(t + dt, y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

ConfigPoint advance_config(const ConfigPoint& q, const Eigen::VectorXd& sigma) {
  if (const auto* r = std::get_if<Rotation>(&q)) {
    return Rotation(r->m * exp_so3(Vec3(sigma)).m);
  }
  if (const auto* s = std::get_if<SpherePoint>(&q)) {
    return SpherePoint{exp_so3(Vec3(sigma)).m * s->x};
  }
  return ConfigPoint(Eigen::VectorXd(as_vector(q) + sigma));
}

ConfigPoint reconstruct_step(const ConfigPoint& q, const AlgebraVector& V, double dt) {
  return advance_config(q, dt * V.coeffs);
}

void validate_stepper_config(const StepperConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("stepper: dt must be positive");
  if (!(cfg.dt < cfg.t_end)) throw std::invalid_argument("stepper: dt must be smaller than t_end");
  if (cfg.record_every < 1) throw std::invalid_argument("stepper: record_every must be >= 1");
  if (cfg.reorthonormalize_every < 0) {
    throw std::invalid_argument("stepper: reorthonormalize_every must be >= 0");
  }
}

Trajectory simulate(const SystemSpec& sys, const EPState& init, const StepperConfig& cfg) {
  validate_stepper_config(cfg);

  const int r = sys.algebra_dim;
  Trajectory traj;
  traj.system_id = sys.id;
  traj.config = cfg;
  for (const auto& inv : sys.invariants) traj.invariant_names.push_back(inv.name);

  ConfigPoint gamma = init.gamma;
  Eigen::VectorXd mu = init.mu.coeffs;
  const long long n_steps = std::llround(cfg.t_end / cfg.dt);

  // stage derivative of the pair (sigma, mu) at a trial point; sigma
  // parameterizes the configuration as advance_config(gamma_n, sigma)
  auto stage = [&](const ConfigPoint& base, const Eigen::VectorXd& sigma,
                   const Eigen::VectorXd& mu_s, Eigen::VectorXd& dsigma, Eigen::VectorXd& dmu) {
    const ConfigPoint q = advance_config(base, sigma);
    const DualVector mu_d(mu_s);
    const AlgebraVector V = sys.legendre_inverse(q, mu_d);
    dsigma = dexpinv_config(q, sigma, V.coeffs);
    dmu = (-ad_star(sys.sc, V, mu_d) + omega_force(sys, q, V)).coeffs;
  };

  auto record = [&](long long k) {
    const double t = init.t + k * cfg.dt;
    const DualVector mu_d(mu);
    const AlgebraVector V = sys.legendre_inverse(gamma, mu_d);
    traj.samples.push_back({t, gamma, V, mu_d});
    Eigen::VectorXd row(static_cast<int>(sys.invariants.size()));
    for (std::size_t i = 0; i < sys.invariants.size(); ++i) {
      row[static_cast<int>(i)] = sys.invariants[i].eval(gamma, V, mu_d);
    }
    traj.invariant_rows.push_back(std::move(row));
  };

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(r);
  Eigen::VectorXd k1s(r), k1m(r), k2s(r), k2m(r), k3s(r), k3m(r), k4s(r), k4m(r);

  record(0);
  for (long long k = 0; k < n_steps; ++k) {
    const double t = init.t + k * cfg.dt;
    const double dt = cfg.dt;

    stage(gamma, zero, mu, k1s, k1m);
    if (cfg.scheme == Scheme::rk4) {
      stage(gamma, 0.5 * dt * k1s, mu + 0.5 * dt * k1m, k2s, k2m);
      stage(gamma, 0.5 * dt * k2s, mu + 0.5 * dt * k2m, k3s, k3m);
      stage(gamma, dt * k3s, mu + dt * k3m, k4s, k4m);
      const Eigen::VectorXd sigma = (dt / 6.0) * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
      mu += (dt / 6.0) * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
      gamma = advance_config(gamma, sigma);
    } else {
      stage(gamma, 0.5 * dt * k1s, mu + 0.5 * dt * k1m, k2s, k2m);
      const Eigen::VectorXd sigma = dt * k2s;
      mu += dt * k2m;
      gamma = advance_config(gamma, sigma);
    }
    check_finite(t + dt, mu);
    if (const auto* v = std::get_if<Eigen::VectorXd>(&gamma)) check_finite(t + dt, *v);

    if (cfg.reorthonormalize_every > 0 && (k + 1) % cfg.reorthonormalize_every == 0) {
      if (const auto* rot = std::get_if<Rotation>(&gamma)) {
        gamma = reorthonormalize(*rot);
      } else if (const auto* s = std::get_if<SpherePoint>(&gamma)) {
        const double radius = std::sqrt(s->x.squaredNorm());
        const auto it = sys.parameters.find("radius");
        if (it != sys.parameters.end() && radius > 0.0) {
          gamma = SpherePoint{s->x * (it->second / radius)};
        }
      }
    }
    if ((k + 1) % cfg.record_every == 0) record(k + 1);
  }
  return traj;
}

std::vector<std::pair<double, DualVector>> lie_poisson_simulate(const SystemSpec& sys,
                                                                const DualVector& xi0,
                                                                const StepperConfig& cfg) {
  validate_stepper_config(cfg);
  if (!sys.has_hamiltonian_h() || !sys.dh) {
    throw std::invalid_argument("lie_poisson_simulate: system '" + sys.id +
                                "' has no reduced Hamiltonian on the dual algebra");
  }
  auto f = [&](double, const Eigen::VectorXd& y) {
    return Eigen::VectorXd(lie_poisson_rhs(sys, DualVector(y)).coeffs);
  };

  std::vector<std::pair<double, DualVector>> out;
  Eigen::VectorXd xi = xi0.coeffs;
  const long long n_steps = std::llround(cfg.t_end / cfg.dt);
  out.emplace_back(0.0, DualVector(xi));
  for (long long k = 0; k < n_steps; ++k) {
    const double t = k * cfg.dt;
    if (cfg.scheme == Scheme::rk4) {
      xi = rk4_step(f, t, xi, cfg.dt);
    } else {
      const Eigen::VectorXd k1 = f(t, xi);
      xi = xi + cfg.dt * f(t + 0.5 * cfg.dt, xi + 0.5 * cfg.dt * k1);
    }
    check_finite(t + cfg.dt, xi);
    if ((k + 1) % cfg.record_every == 0) out.emplace_back((k + 1) * cfg.dt, DualVector(xi));
  }
  return out;
}

}  // namespace epmech
