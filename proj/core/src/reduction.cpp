#include "epmech/reduction.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "epmech/integrators.hpp"

namespace epmech {

DualVector momentum_right(const CotangentPoint& p) { return p.mu_body; }

DualVector momentum_left(const CotangentPoint& p) { return Ad_star(p.g, p.mu_body); }

Eigen::VectorXd momentum_restricted(const DualVector& zeta,
                                    const std::vector<AlgebraVector>& basis) {
  if (basis.empty()) throw std::invalid_argument("momentum_restricted: empty basis");
  const int dim = zeta.dim();
  Eigen::MatrixXd b(dim, static_cast<int>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != dim) {
      throw std::invalid_argument("momentum_restricted: basis dimension mismatch");
    }
    b.col(static_cast<int>(i)) = basis[i].coeffs;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
  if (qr.rank() < b.cols()) {
    throw std::invalid_argument("momentum_restricted: basis is linearly dependent");
  }
  return b.transpose() * zeta.coeffs;
}

ExtendedMomentum extended_momentum(const CotangentPoint& p) {
  ExtendedMomentum out;
  out.jl = momentum_left(p);
  out.k = p.g.m.transpose() * Vec3::UnitZ();
  return out;
}

namespace {

// Spatial momentum of one recorded sample: Ad*_g mu for group configurations;
// sphere and vector momenta already live in the fixed frame.
DualVector sample_momentum(const TrajectorySample& s) {
  if (std::holds_alternative<Rotation>(s.gamma)) {
    return Ad_star(std::get<Rotation>(s.gamma), s.mu);
  }
  return s.mu;
}

Rotation random_rotation(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  return exp_so3(Vec3(u(rng), u(rng), u(rng)));
}

ConfigPoint random_config_like(const SystemSpec& sys, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  if (sys.parameters.count("radius") > 0) {
    const double r = sys.parameters.at("radius");
    Vec3 x(u(rng), u(rng), u(rng));
    while (x.norm() < 1e-3) x = Vec3(u(rng), u(rng), u(rng));
    return SpherePoint{r * x.normalized()};
  }
  if (sys.sc.name() == "so3") return random_rotation(rng);
  Eigen::VectorXd x(sys.config_dim);
  for (int i = 0; i < x.size(); ++i) x[i] = u(rng);
  return x;
}

}  // namespace

InvariantReport noether_monitor(const SystemSpec& sys, const Trajectory& traj, double tol) {
  if (traj.samples.empty()) {
    throw std::invalid_argument("noether_monitor: trajectory has no samples");
  }
  InvariantReport rep;
  rep.system_id = traj.system_id;

  const DualVector j0 = sample_momentum(traj.samples.front());
  const double scale = j0.coeffs.cwiseAbs().maxCoeff();
  Eigen::VectorXd max_abs = Eigen::VectorXd::Zero(j0.dim());
  for (const auto& s : traj.samples) {
    max_abs = max_abs.cwiseMax((sample_momentum(s).coeffs - j0.coeffs).cwiseAbs());
  }
  for (int i = 0; i < j0.dim(); ++i) {
    InvariantDrift d;
    d.name = "J" + std::to_string(i + 1);
    d.initial = j0.coeffs[i];
    d.max_abs_drift = max_abs[i];
    d.max_rel_drift = max_abs[i] / std::max({std::abs(d.initial), 1e-3 * scale, 1e-300});
    rep.invariants.push_back(d);
    if (sys.d1_lbar_zero) {
      CheckResult c;
      c.name = d.name + "_conserved";
      c.value = d.max_rel_drift;
      c.tolerance = tol;
      c.pass = c.value <= c.tolerance;
      rep.checks.push_back(c);
    }
  }
  return rep;
}

double hamiltonian_level_set_violation(const SystemSpec& sys, int pairs, unsigned seed) {
  if (!sys.hamiltonian_full) {
    throw std::invalid_argument("hamiltonian_level_set_violation: system has no Hamiltonian");
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < pairs; ++i) {
    DualVector mu = DualVector::zero(sys.algebra_dim);
    for (int k = 0; k < sys.algebra_dim; ++k) mu.coeffs[k] = u(rng);
    const ConfigPoint a = random_config_like(sys, rng);
    const ConfigPoint b = random_config_like(sys, rng);
    worst = std::max(worst,
                     std::abs(sys.hamiltonian_full(a, mu) - sys.hamiltonian_full(b, mu)));
  }
  return worst;
}

double extended_level_set_violation(const SystemSpec& sys, int samples, unsigned seed) {
  if (!sys.has_extension() || !sys.advected) {
    throw std::invalid_argument("extended_level_set_violation: system has no extension");
  }
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    DualVector mu = DualVector::zero(sys.algebra_dim);
    for (int k = 0; k < sys.algebra_dim; ++k) mu.coeffs[k] = u(rng);
    const ConfigPoint g = random_config_like(sys, rng);
    const double full = sys.hamiltonian_full(g, mu);
    const double ext = sys.hamiltonian_ext(mu, sys.advected(g));
    worst = std::max(worst, std::abs(full - ext));
  }
  return worst;
}

EquivalenceReport equivalence_check(const SystemSpec& sys, const EPState& init,
                                    const StepperConfig& cfg, int level_set_pairs,
                                    unsigned seed, double level_set_tol) {
  EquivalenceReport rep;
  rep.level_set_violation = hamiltonian_level_set_violation(sys, level_set_pairs, seed);
  if (rep.level_set_violation > level_set_tol) {
    throw std::domain_error(
        "equivalence_check: Hamiltonian is not a function of the momentum alone "
        "(level-set violation " + std::to_string(rep.level_set_violation) +
        "); the Lie-Poisson reduction does not close");
  }
  if (!sys.has_hamiltonian_h()) {
    throw std::invalid_argument("equivalence_check: system has no reduced Hamiltonian");
  }

  const Trajectory full = simulate(sys, init, cfg);
  const auto reduced = lie_poisson_simulate(sys, init.mu, cfg);
  if (full.samples.size() != reduced.size()) {
    throw std::logic_error("equivalence_check: sample counts diverge");
  }

  const double mu0_norm = init.mu.norm();
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    const Eigen::VectorXd diff = full.samples[i].mu.coeffs - reduced[i].second.coeffs;
    rep.max_mu_deviation = std::max(rep.max_mu_deviation, diff.cwiseAbs().maxCoeff());
    if (mu0_norm > 0.0) {
      rep.max_orbit_drift = std::max(
          rep.max_orbit_drift, std::abs(reduced[i].second.norm() - mu0_norm) / mu0_norm);
    }
  }
  rep.samples = static_cast<int>(reduced.size());
  return rep;
}

Trajectory simulate_heavy_top_reduced(const SystemSpec& sys, const DualVector& mu0,
                                      const Vec3& gamma0, const StepperConfig& cfg) {
  if (sys.id != "heavy-top") {
    throw std::invalid_argument("simulate_heavy_top_reduced: requires a heavy-top system");
  }
  validate_stepper_config(cfg);
  const double radius = gamma0.norm();
  if (std::abs(radius - 1.0) > 1e-9) {
    throw std::invalid_argument("simulate_heavy_top_reduced: Gamma must be a unit vector");
  }

  const double mg = sys.parameters.at("mass") * sys.parameters.at("gravity");
  const Vec3 com(sys.parameters.at("com_x"), sys.parameters.at("com_y"),
                 sys.parameters.at("com_z"));
  // The kinetic metric does not depend on the configuration, so the captured
  // inertia can be queried through the fiber derivative at any group element.
  const auto omega_of = [&](const Vec3& mu) {
    return as_vec3(sys.legendre_inverse(Rotation::identity(), dual3(mu)));
  };

  // Reduced equations on so(3)* x S^2, mu' = mu x Omega + mg Gamma x a,
  // Gamma' = Gamma x Omega with Omega = I^{-1} mu.
  const auto rhs = [&](double, const Eigen::VectorXd& y) {
    const Vec3 mu = y.head<3>();
    const Vec3 gm = y.tail<3>();
    const Vec3 omega = omega_of(mu);
    Eigen::VectorXd dy(6);
    dy.head<3>() = mu.cross(omega) + mg * gm.cross(com);
    dy.tail<3>() = gm.cross(omega);
    return dy;
  };

  Trajectory traj;
  traj.system_id = sys.id + "-reduced";
  traj.config = cfg;
  traj.invariant_names = {"energy", "casimir_gamma", "casimir_mu_gamma"};

  Eigen::VectorXd y(6);
  y.head<3>() = as_vec3(mu0);
  y.tail<3>() = gamma0;

  const auto record = [&](double t) {
    const Vec3 mu = y.head<3>();
    const Vec3 gm = y.tail<3>();
    TrajectorySample s;
    s.t = t;
    s.gamma = SpherePoint{gm};
    s.V = algebra3(omega_of(mu));
    s.mu = dual3(mu);
    traj.samples.push_back(s);
    Eigen::VectorXd row(3);
    row[0] = sys.hamiltonian_ext(s.mu, gm);
    row[1] = gm.squaredNorm();
    row[2] = mu.dot(gm);
    traj.invariant_rows.push_back(row);
  };

  record(0.0);
  const long long n_steps = std::llround(cfg.t_end / cfg.dt);
  for (long long k = 0; k < n_steps; ++k) {
    y = rk4_step(rhs, k * cfg.dt, y, cfg.dt);
    if (!y.allFinite() || y.cwiseAbs().maxCoeff() > 1e12) {
      throw BlowupError((k + 1) * cfg.dt, y.cwiseAbs().maxCoeff());
    }
    if ((k + 1) % cfg.record_every == 0) record((k + 1) * cfg.dt);
  }
  return traj;
}

}  // namespace epmech
