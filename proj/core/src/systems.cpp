#include "epmech/systems.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <stdexcept>

namespace epmech {

const Rotation& as_rotation(const ConfigPoint& q) {
  if (const auto* r = std::get_if<Rotation>(&q)) return *r;
  throw std::invalid_argument("configuration kind mismatch: expected rotation, got " + config_kind(q));
}

const SpherePoint& as_sphere(const ConfigPoint& q) {
  if (const auto* s = std::get_if<SpherePoint>(&q)) return *s;
  throw std::invalid_argument("configuration kind mismatch: expected sphere point, got " + config_kind(q));
}

const Eigen::VectorXd& as_vector(const ConfigPoint& q) {
  if (const auto* v = std::get_if<Eigen::VectorXd>(&q)) return *v;
  throw std::invalid_argument("configuration kind mismatch: expected vector, got " + config_kind(q));
}

std::string config_kind(const ConfigPoint& q) {
  switch (q.index()) {
    case 0: return "rotation";
    case 1: return "sphere";
    default: return "vector";
  }
}

InertiaOperator::InertiaOperator(const Mat3& m) : mat_(m) {
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("InertiaOperator: matrix must be symmetric to 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(m);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("InertiaOperator: matrix must be positive definite (min eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()) + ")");
  }
  inv_ = m.inverse();
}

InertiaOperator InertiaOperator::diagonal(double i1, double i2, double i3) {
  Mat3 m = Mat3::Zero();
  m(0, 0) = i1;
  m(1, 1) = i2;
  m(2, 2) = i3;
  return InertiaOperator(m);
}

DualVector InertiaOperator::apply(const AlgebraVector& omega) const {
  return dual3(mat_ * as_vec3(omega));
}

AlgebraVector InertiaOperator::solve(const DualVector& mu) const {
  return algebra3(inv_ * as_vec3(mu));
}

namespace {

void require_kind(const SystemSpec& sys, const ConfigPoint& gamma) {
  const ConfigKind got = std::holds_alternative<Rotation>(gamma)      ? ConfigKind::rotation
                         : std::holds_alternative<SpherePoint>(gamma) ? ConfigKind::sphere
                                                                      : ConfigKind::vector;
  if (got != sys.config_kind) {
    throw std::invalid_argument(sys.id + ": configuration kind mismatch, got " +
                                config_kind(gamma));
  }
}

}  // namespace

EPState make_state(const SystemSpec& sys, double t, ConfigPoint gamma, const AlgebraVector& V) {
  require_kind(sys, gamma);
  EPState s;
  s.t = t;
  s.gamma = std::move(gamma);
  s.V = V;
  s.mu = sys.d2_lbar(s.gamma, V);
  return s;
}

EPState make_state_from_momentum(const SystemSpec& sys, double t, ConfigPoint gamma,
                                 const DualVector& mu) {
  require_kind(sys, gamma);
  EPState s;
  s.t = t;
  s.gamma = std::move(gamma);
  s.mu = mu;
  s.V = sys.legendre_inverse(s.gamma, mu);
  return s;
}

namespace {

Eigen::MatrixXd body_anchor(const Rotation& g, const AlgebraVector& V) {
  return g.m * hat(as_vec3(V));
}

}  // namespace

SystemSpec make_free_rigid_body(const InertiaOperator& inertia) {
  SystemSpec sys;
  sys.id = "free-rigid-body";
  sys.sc = StructureConstants::so3();
  sys.config_kind = ConfigKind::rotation;
  sys.config_dim = 3;
  sys.algebra_dim = 3;
  sys.d1_lbar_zero = true;

  const InertiaOperator I = inertia;
  sys.lbar = [I](const ConfigPoint&, const AlgebraVector& V) {
    const Vec3 w = as_vec3(V);
    return 0.5 * w.dot(I.matrix() * w);
  };
  sys.d1_lbar = [](const ConfigPoint&, const AlgebraVector&) {
    return Eigen::VectorXd(Eigen::VectorXd::Zero(3));
  };
  sys.d2_lbar = [I](const ConfigPoint&, const AlgebraVector& V) { return I.apply(V); };
  sys.legendre_inverse = [I](const ConfigPoint&, const DualVector& mu) { return I.solve(mu); };
  sys.anchor = [](const ConfigPoint& q, const AlgebraVector& V) {
    return Eigen::MatrixXd(body_anchor(as_rotation(q), V));
  };
  // Legendre route <mu, V> - Lbar(V); closes to 1/2 <mu, I^{-1} mu>
  sys.hamiltonian_full = [I](const ConfigPoint&, const DualVector& mu) {
    const Vec3 w = I.inverse() * as_vec3(mu);
    return as_vec3(mu).dot(w) - 0.5 * w.dot(I.matrix() * w);
  };
  sys.hamiltonian_h = [I](const DualVector& xi) {
    const Vec3 m = as_vec3(xi);
    return 0.5 * m.dot(I.inverse() * m);
  };
  sys.dh = [I](const DualVector& xi) { return I.solve(xi); };

  sys.invariants = {
      {"H", [I](const ConfigPoint&, const AlgebraVector&, const DualVector& mu) {
         const Vec3 m = as_vec3(mu);
         return 0.5 * m.dot(I.inverse() * m);
       }, 1e-7, 0.0},
      {"casimir", [](const ConfigPoint&, const AlgebraVector&, const DualVector& mu) {
         return mu.coeffs.squaredNorm();
       }, 1e-7, 0.0},
  };
  for (int i = 0; i < 3; ++i) {
    sys.invariants.push_back({"JL" + std::to_string(i + 1),
                              [i](const ConfigPoint& q, const AlgebraVector&, const DualVector& mu) {
                                return (as_rotation(q).m * as_vec3(mu))[i];
                              }, 1e-7, 0.0});
  }
  for (int i = 0; i < 3; ++i) sys.parameters["I" + std::to_string(i + 1)] = inertia.matrix()(i, i);
  return sys;
}

SystemSpec make_heavy_top(const InertiaOperator& inertia, double mass, double gravity,
                          const Vec3& com) {
  if (mass <= 0.0) throw std::invalid_argument("make_heavy_top: mass must be positive");
  if (gravity < 0.0) throw std::invalid_argument("make_heavy_top: gravity must be nonnegative");

  SystemSpec sys;
  sys.id = "heavy-top";
  sys.sc = StructureConstants::so3();
  sys.config_kind = ConfigKind::rotation;
  sys.config_dim = 3;
  sys.algebra_dim = 3;
  sys.d1_lbar_zero = false;

  const InertiaOperator I = inertia;
  const double mg = mass * gravity;
  const Vec3 a = com;

  auto advected = [](const ConfigPoint& q) -> Vec3 {
    return as_rotation(q).m.transpose() * Vec3::UnitZ();
  };
  // U(R) = m g <a, Gamma(R)>; potential of the uniform field for the body
  // centre of mass at R a.
  sys.lbar = [I, mg, a, advected](const ConfigPoint& q, const AlgebraVector& V) {
    const Vec3 w = as_vec3(V);
    return 0.5 * w.dot(I.matrix() * w) - mg * a.dot(advected(q));
  };
  sys.d1_lbar = [mg, a, advected](const ConfigPoint& q, const AlgebraVector&) {
    const Vec3 torque = mg * advected(q).cross(a);
    return Eigen::VectorXd(torque);
  };
  sys.d2_lbar = [I](const ConfigPoint&, const AlgebraVector& V) { return I.apply(V); };
  sys.legendre_inverse = [I](const ConfigPoint&, const DualVector& mu) { return I.solve(mu); };
  sys.anchor = [](const ConfigPoint& q, const AlgebraVector& V) {
    return Eigen::MatrixXd(body_anchor(as_rotation(q), V));
  };
  sys.advected = advected;
  sys.hamiltonian_ext = [I, mg, a](const DualVector& mu, const Vec3& gamma) {
    const Vec3 m = as_vec3(mu);
    return 0.5 * m.dot(I.inverse() * m) + mg * a.dot(gamma);
  };
  sys.hamiltonian_full = [I, mg, a, advected](const ConfigPoint& q, const DualVector& mu) {
    const AlgebraVector V = algebra3(I.inverse() * as_vec3(mu));
    const Vec3 w = as_vec3(V);
    const double lb = 0.5 * w.dot(I.matrix() * w) - mg * a.dot(advected(q));
    return pairing(mu, V) - lb;
  };

  sys.invariants = {
      {"H", [I, mg, a, advected](const ConfigPoint& q, const AlgebraVector&, const DualVector& mu) {
         const Vec3 m = as_vec3(mu);
         return 0.5 * m.dot(I.inverse() * m) + mg * a.dot(advected(q));
       }, 1e-7, 0.0},
      {"casimir_gamma", [advected](const ConfigPoint& q, const AlgebraVector&, const DualVector&) {
         return advected(q).squaredNorm();
       }, 1e-7, 0.0},
      {"casimir_mu_gamma", [advected](const ConfigPoint& q, const AlgebraVector&, const DualVector& mu) {
         return as_vec3(mu).dot(advected(q));
       }, 1e-7, 0.0},
      // same conserved number as casimir_mu_gamma, evaluated through the
      // spatial momentum instead of the advected vector
      {"JL_vertical", [](const ConfigPoint& q, const AlgebraVector&, const DualVector& mu) {
         return (as_rotation(q).m * as_vec3(mu)).z();
       }, 1e-7, 0.0},
  };
  sys.parameters = {{"mass", mass}, {"gravity", gravity},
                    {"com_x", com.x()}, {"com_y", com.y()}, {"com_z", com.z()}};
  for (int i = 0; i < 3; ++i) sys.parameters["I" + std::to_string(i + 1)] = inertia.matrix()(i, i);
  return sys;
}

SystemSpec make_spherical_pendulum(double mass, double radius, const Vec3& gravity) {
  if (mass <= 0.0) throw std::invalid_argument("make_spherical_pendulum: mass must be positive");
  if (radius <= 0.0) throw std::invalid_argument("make_spherical_pendulum: radius must be positive");

  SystemSpec sys;
  sys.id = "spherical-pendulum";
  sys.sc = StructureConstants::so3();
  sys.config_kind = ConfigKind::sphere;
  sys.config_dim = 2;
  sys.algebra_dim = 3;
  sys.d1_lbar_zero = false;

  const double m = mass;
  const double r2 = radius * radius;
  const Vec3 g = gravity;

  // Lbar(x, Omega) = m/2 (r^2 |Omega|^2 - (Omega.x)^2) + m <g, x>;
  // the kinetic part is |Omega cross x|^2 expanded.
  sys.lbar = [m, r2, g](const ConfigPoint& q, const AlgebraVector& V) {
    const Vec3 x = as_sphere(q).x;
    const Vec3 w = as_vec3(V);
    const double wx = w.dot(x);
    return 0.5 * m * (r2 * w.squaredNorm() - wx * wx) + m * g.dot(x);
  };
  sys.d1_lbar = [m, g](const ConfigPoint& q, const AlgebraVector& V) {
    const Vec3 x = as_sphere(q).x;
    const Vec3 w = as_vec3(V);
    return Eigen::VectorXd(Vec3(-m * w.dot(x) * w + m * g));
  };
  sys.d2_lbar = [m, r2](const ConfigPoint& q, const AlgebraVector& V) {
    const Vec3 x = as_sphere(q).x;
    const Vec3 w = as_vec3(V);
    return dual3(m * r2 * w - m * x.dot(w) * x);
  };
  sys.legendre_inverse = [m, r2](const ConfigPoint& q, const DualVector& mu) {
    const Vec3 x = as_sphere(q).x;
    const Vec3 p = as_vec3(mu);
    const Vec3 p_tan = p - (p.dot(x) / r2) * x;  // minimal-norm lift
    return algebra3(p_tan / (m * r2));
  };
  sys.anchor = [](const ConfigPoint& q, const AlgebraVector& V) {
    return Eigen::MatrixXd(Vec3(as_vec3(V).cross(as_sphere(q).x)));
  };
  // Legendre route: <mu, V> - Lbar with the minimal lift V
  sys.hamiltonian_full = [m, r2, g](const ConfigPoint& q, const DualVector& mu) {
    const Vec3 x = as_sphere(q).x;
    const Vec3 p = as_vec3(mu);
    const Vec3 w = (p - (p.dot(x) / r2) * x) / (m * r2);
    const double wx = w.dot(x);
    const double lb = 0.5 * m * (r2 * w.squaredNorm() - wx * wx) + m * g.dot(x);
    return p.dot(w) - lb;
  };

  const Vec3 up = (g.norm() > 0.0) ? Vec3(-g.normalized()) : Vec3::UnitZ();
  sys.invariants = {
      {"H", [m, r2, g](const ConfigPoint& q, const AlgebraVector&, const DualVector& mu) {
         const Vec3 x = as_sphere(q).x;
         const Vec3 p = as_vec3(mu);
         const Vec3 p_tan = p - (p.dot(x) / r2) * x;
         return p_tan.squaredNorm() / (2.0 * m * r2) - m * g.dot(x);
       }, 1e-7, 0.0},
      {"vertical_momentum", [up](const ConfigPoint&, const AlgebraVector&, const DualVector& mu) {
         return as_vec3(mu).dot(up);
       }, 1e-7, 0.0},
  };
  sys.parameters = {{"mass", mass}, {"radius", radius},
                    {"g_x", g.x()}, {"g_y", g.y()}, {"g_z", g.z()}};
  return sys;
}

SystemSpec make_abelian_system(int n, const std::string& id, AbelianLagrangian lagrangian) {
  if (n < 1) throw std::invalid_argument("make_abelian_system: n must be >= 1");
  if (!lagrangian.L || !lagrangian.dL_dx || !lagrangian.dL_dv || !lagrangian.velocity_of) {
    throw std::invalid_argument("make_abelian_system: all Lagrangian callables must be set");
  }

  SystemSpec sys;
  sys.id = id;
  sys.sc = StructureConstants::abelian(n);
  sys.config_dim = n;
  sys.algebra_dim = n;
  sys.d1_lbar_zero = false;

  auto lag = std::make_shared<AbelianLagrangian>(std::move(lagrangian));
  sys.lbar = [lag](const ConfigPoint& q, const AlgebraVector& V) {
    return lag->L(as_vector(q), V.coeffs);
  };
  sys.d1_lbar = [lag](const ConfigPoint& q, const AlgebraVector& V) {
    return lag->dL_dx(as_vector(q), V.coeffs);
  };
  sys.d2_lbar = [lag](const ConfigPoint& q, const AlgebraVector& V) {
    return DualVector(lag->dL_dv(as_vector(q), V.coeffs));
  };
  sys.legendre_inverse = [lag](const ConfigPoint& q, const DualVector& mu) {
    return AlgebraVector(lag->velocity_of(as_vector(q), mu.coeffs));
  };
  sys.anchor = [](const ConfigPoint&, const AlgebraVector& V) {
    return Eigen::MatrixXd(V.coeffs);
  };
  sys.hamiltonian_full = [lag](const ConfigPoint& q, const DualVector& mu) {
    const Eigen::VectorXd x = as_vector(q);
    const Eigen::VectorXd v = lag->velocity_of(x, mu.coeffs);
    return mu.coeffs.dot(v) - lag->L(x, v);
  };

  sys.invariants = {
      {"H", [lag](const ConfigPoint& q, const AlgebraVector&, const DualVector& mu) {
         const Eigen::VectorXd x = as_vector(q);
         const Eigen::VectorXd v = lag->velocity_of(x, mu.coeffs);
         return mu.coeffs.dot(v) - lag->L(x, v);
       }, 1e-7, 0.0},
  };
  return sys;
}

SystemSpec make_harmonic_oscillator(double mass, double stiffness) {
  if (mass <= 0.0) throw std::invalid_argument("make_harmonic_oscillator: mass must be positive");
  if (stiffness <= 0.0) throw std::invalid_argument("make_harmonic_oscillator: stiffness must be positive");
  AbelianLagrangian lag;
  const double m = mass, k = stiffness;
  lag.L = [m, k](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    return 0.5 * m * v.squaredNorm() - 0.5 * k * x.squaredNorm();
  };
  lag.dL_dx = [k](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return Eigen::VectorXd(-k * x);
  };
  lag.dL_dv = [m](const Eigen::VectorXd&, const Eigen::VectorXd& v) {
    return Eigen::VectorXd(m * v);
  };
  lag.velocity_of = [m](const Eigen::VectorXd&, const Eigen::VectorXd& mu) {
    return Eigen::VectorXd(mu / m);
  };
  SystemSpec sys = make_abelian_system(1, "harmonic-oscillator", std::move(lag));
  sys.parameters = {{"mass", mass}, {"stiffness", stiffness}};
  return sys;
}

DualVector omega_force(const SystemSpec& sys, const ConfigPoint& x, const AlgebraVector& V) {
  if (sys.d1_lbar_zero) return DualVector::zero(sys.algebra_dim);
  const Eigen::VectorXd d1 = sys.d1_lbar(x, V);
  if (std::holds_alternative<Rotation>(x)) {
    return DualVector(d1);  // already the body-trivialized contraction
  }
  if (std::holds_alternative<SpherePoint>(x)) {
    // fundamental field of e_k is e_k cross x, so component k is
    // <grad, e_k cross x> = (x cross grad)_k
    const Vec3 grad(d1[0], d1[1], d1[2]);
    return dual3(as_sphere(x).x.cross(grad));
  }
  return DualVector(d1);
}

double validate_system(const SystemSpec& sys, unsigned seed, int samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  double worst = 0.0;

  auto random_config = [&]() -> ConfigPoint {
    if (sys.parameters.count("radius") > 0) {
      Vec3 x(u(rng), u(rng), u(rng));
      x.normalize();
      return SpherePoint{x * sys.parameters.at("radius")};
    }
    if (sys.sc.name() == "so3") {
      return Rotation(exp_so3(Vec3(u(rng), u(rng), u(rng))).m);
    }
    Eigen::VectorXd x(sys.config_dim);
    for (int i = 0; i < x.size(); ++i) x[i] = u(rng);
    return ConfigPoint(x);
  };
  auto random_algebra = [&]() {
    Eigen::VectorXd v(sys.algebra_dim);
    for (int i = 0; i < v.size(); ++i) v[i] = u(rng);
    return AlgebraVector(std::move(v));
  };
  auto shifted = [&](const ConfigPoint& q, int k, double s) -> ConfigPoint {
    if (const auto* r = std::get_if<Rotation>(&q)) {
      Vec3 e = Vec3::Zero();
      e[k] = s;
      return Rotation(r->m * exp_so3(e).m);
    }
    if (const auto* sp = std::get_if<SpherePoint>(&q)) {
      Vec3 x = sp->x;
      x[k] += s;
      return SpherePoint{x};
    }
    Eigen::VectorXd x = as_vector(q);
    x[k] += s;
    return ConfigPoint(x);
  };

  for (int it = 0; it < samples; ++it) {
    const ConfigPoint q = random_config();
    const AlgebraVector X = random_algebra();
    const AlgebraVector Y = random_algebra();
    const double al = u(rng), be = u(rng);

    // anchor is fiberwise linear
    const Eigen::MatrixXd lin =
        sys.anchor(q, AlgebraVector(al * X.coeffs + be * Y.coeffs)) -
        (al * sys.anchor(q, X) + be * sys.anchor(q, Y));
    worst = std::max(worst, lin.cwiseAbs().maxCoeff());

    // d2Lbar against central differences in the velocity argument
    const DualVector d2 = sys.d2_lbar(q, X);
    for (int k = 0; k < sys.algebra_dim; ++k) {
      Eigen::VectorXd vp = X.coeffs, vm = X.coeffs;
      vp[k] += h;
      vm[k] -= h;
      const double fd =
          (sys.lbar(q, AlgebraVector(vp)) - sys.lbar(q, AlgebraVector(vm))) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - d2[k]));
    }

    // d1Lbar against central differences in the configuration argument
    if (!sys.d1_lbar_zero) {
      const Eigen::VectorXd d1 = sys.d1_lbar(q, X);
      const int nd = std::holds_alternative<Rotation>(q) ? 3 : static_cast<int>(d1.size());
      for (int k = 0; k < nd; ++k) {
        const double fd = (sys.lbar(shifted(q, k, h), X) - sys.lbar(shifted(q, k, -h), X)) / (2.0 * h);
        worst = std::max(worst, std::abs(fd - d1[k]));
      }
    }
  }
  return worst;
}

}  // namespace epmech
