#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epmech/systems.hpp"

using namespace epmech;

namespace {

AlgebraVector alg1(double v) {
  AlgebraVector out = AlgebraVector::zero(1);
  out.coeffs[0] = v;
  return out;
}

}  // namespace

TEST_CASE("inertia operator requires symmetric positive-definite input") {
  Mat3 asym = Mat3::Identity();
  asym(0, 1) = 0.5;  // (1,0) left at 0
  CHECK_THROWS_AS(InertiaOperator{asym}, std::invalid_argument);

  Mat3 indefinite = Mat3::Identity();
  indefinite(1, 1) = -2.0;
  CHECK_THROWS_AS(InertiaOperator{indefinite}, std::invalid_argument);

  const InertiaOperator I = InertiaOperator::diagonal(1.0, 2.0, 3.0);
  const AlgebraVector w = algebra3(Vec3(1.0, 1.0, 1.0));
  const DualVector mu = I.apply(w);
  CHECK((as_vec3(mu) - Vec3(1.0, 2.0, 3.0)).norm() == 0.0);
  CHECK((I.solve(mu).coeffs - w.coeffs).norm() < 1e-15);
}

TEST_CASE("configuration accessors reject the wrong kind") {
  const ConfigPoint r = Rotation::identity();
  const ConfigPoint s = SpherePoint{Vec3(1, 0, 0)};
  CHECK(config_kind(r) == "rotation");
  CHECK(config_kind(s) == "sphere");
  CHECK_NOTHROW(as_rotation(r));
  CHECK_THROWS_AS(as_rotation(s), std::invalid_argument);
  CHECK_THROWS_AS(as_sphere(r), std::invalid_argument);
  CHECK_THROWS_AS(as_vector(s), std::invalid_argument);
}

TEST_CASE("free rigid body: analytic data is self-consistent") {
  const SystemSpec sys = make_free_rigid_body(InertiaOperator::diagonal(1.0, 2.0, 3.0));
  CHECK(sys.d1_lbar_zero);
  CHECK(validate_system(sys) < 1e-8);
}

TEST_CASE("free rigid body: Legendre pairs and frozen invariant values") {
  const SystemSpec sys = make_free_rigid_body(InertiaOperator::diagonal(1.0, 2.0, 3.0));
  const EPState s = make_state(sys, 0.0, Rotation::identity(), algebra3(Vec3(1, 1, 1)));
  CHECK((as_vec3(s.mu) - Vec3(1, 2, 3)).norm() == 0.0);

  const EPState back = make_state_from_momentum(sys, 0.0, Rotation::identity(), s.mu);
  CHECK((back.V.coeffs - s.V.coeffs).norm() < 1e-15);

  // H = 1/2 <I w, w> = (1 + 2 + 3)/2, casimir = |mu|^2 = 14, J = mu at the
  // identity.
  const auto inv = [&](int i) { return sys.invariants[i].eval(s.gamma, s.V, s.mu); };
  CHECK(sys.invariants[0].name == "H");
  CHECK(inv(0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(sys.invariants[1].name == "casimir");
  CHECK(inv(1) == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(inv(2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(inv(3) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(inv(4) == doctest::Approx(3.0).epsilon(1e-15));

  CHECK(sys.hamiltonian_full(s.gamma, s.mu) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(sys.hamiltonian_h(s.mu) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(omega_force(sys, s.gamma, s.V).coeffs.norm() == 0.0);
}

TEST_CASE("heavy top: analytic data is self-consistent") {
  const SystemSpec sys =
      make_heavy_top(InertiaOperator::diagonal(1.0, 2.0, 3.0), 1.0, 9.81, Vec3(0, 0, 0.3));
  CHECK_FALSE(sys.d1_lbar_zero);
  CHECK(validate_system(sys) < 1e-8);
  CHECK_FALSE(sys.has_hamiltonian_h());
  CHECK(sys.has_extension());
}

TEST_CASE("heavy top: advected vertical and gravitational torque") {
  const SystemSpec sys =
      make_heavy_top(InertiaOperator::diagonal(1.0, 2.0, 3.0), 1.0, 9.81, Vec3(0, 0, 0.3));
  const double half_pi = std::acos(0.0);

  // Upright: the vertical seen from the body is z itself and the torque
  // vanishes (centre of mass directly above the pivot).
  const ConfigPoint upright = Rotation::identity();
  CHECK((sys.advected(upright) - Vec3(0, 0, 1)).norm() == 0.0);
  CHECK(omega_force(sys, upright, algebra3(Vec3::Zero())).coeffs.norm() < 1e-15);

  // Tilted a quarter turn about x: Gamma = (0, 1, 0) and the torque is
  // m g |a| about the body x axis.
  const ConfigPoint tilted = exp_so3(Vec3(half_pi, 0, 0));
  CHECK((sys.advected(tilted) - Vec3(0, 1, 0)).norm() < 1e-15);
  const DualVector torque = omega_force(sys, tilted, algebra3(Vec3::Zero()));
  CHECK((as_vec3(torque) - Vec3(9.81 * 0.3, 0.0, 0.0)).norm() < 1e-14);
}

TEST_CASE("heavy top: extended Hamiltonian agrees with the full one") {
  const SystemSpec sys =
      make_heavy_top(InertiaOperator::diagonal(2.0, 2.0, 1.0), 0.7, 9.81, Vec3(0.1, 0, 0.4));
  const ConfigPoint g = exp_so3(Vec3(0.3, -0.2, 0.9));
  const DualVector mu = dual3(Vec3(0.4, -1.0, 2.0));
  CHECK(sys.hamiltonian_full(g, mu) ==
        doctest::Approx(sys.hamiltonian_ext(mu, sys.advected(g))).epsilon(1e-14));
}

TEST_CASE("heavy top: constructor guards") {
  const InertiaOperator I = InertiaOperator::diagonal(1, 1, 1);
  CHECK_THROWS_AS(make_heavy_top(I, -1.0, 9.81, Vec3(0, 0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(make_heavy_top(I, 1.0, -9.81, Vec3(0, 0, 1)), std::invalid_argument);
}

TEST_CASE("spherical pendulum: analytic data is self-consistent") {
  const SystemSpec sys = make_spherical_pendulum(1.0, 1.0, Vec3(0, 0, -9.81));
  CHECK(validate_system(sys) < 1e-8);
}

TEST_CASE("spherical pendulum: frozen Lagrangian and fiber derivative") {
  const double m = 2.0, R = 1.0;
  const SystemSpec sys = make_spherical_pendulum(m, R, Vec3(0, 0, -9.81));
  const ConfigPoint x = SpherePoint{Vec3(1, 0, 0)};
  const AlgebraVector omega = algebra3(Vec3(0, 0, 1.5));

  // xdot = omega x x = (0, 1.5, 0); kinetic energy m/2 |xdot|^2 = 2.25, and
  // gravity is orthogonal to x so the potential term vanishes.
  CHECK(sys.lbar(x, omega) == doctest::Approx(2.25).epsilon(1e-15));

  // mu = m x cross xdot = (0, 0, 3)
  const DualVector mu = sys.d2_lbar(x, omega);
  CHECK((as_vec3(mu) - Vec3(0, 0, 3)).norm() < 1e-15);

  // Fiber-derivative inversion lands on the minimal (tangential) lift; a
  // radial momentum component is annihilated.
  CHECK((sys.legendre_inverse(x, mu).coeffs - omega.coeffs).norm() < 1e-15);
  const DualVector skew = dual3(Vec3(5.0, 0.0, 3.0));
  CHECK((sys.legendre_inverse(x, skew).coeffs - omega.coeffs).norm() < 1e-15);
}

TEST_CASE("spherical pendulum: constructor guards") {
  CHECK_THROWS_AS(make_spherical_pendulum(0.0, 1.0, Vec3(0, 0, -9.81)), std::invalid_argument);
  CHECK_THROWS_AS(make_spherical_pendulum(1.0, -1.0, Vec3(0, 0, -9.81)), std::invalid_argument);
}

TEST_CASE("harmonic oscillator: abelian Euler-Lagrange data") {
  const SystemSpec sys = make_harmonic_oscillator(2.0, 8.0);
  CHECK(validate_system(sys) < 1e-8);

  Eigen::VectorXd x(1);
  x[0] = 1.0;
  const EPState s = make_state(sys, 0.0, x, alg1(0.5));
  CHECK(s.mu.coeffs[0] == doctest::Approx(1.0).epsilon(1e-15));  // p = m v

  // force map = dL/dx = -k x
  CHECK(omega_force(sys, s.gamma, s.V).coeffs[0] == doctest::Approx(-8.0).epsilon(1e-15));

  // H = p^2/2m + k x^2 / 2 = 0.25 + 4
  CHECK(sys.invariants[0].eval(s.gamma, s.V, s.mu) == doctest::Approx(4.25).epsilon(1e-15));

  CHECK_THROWS_AS(make_harmonic_oscillator(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_harmonic_oscillator(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("make_state rejects a mismatched configuration kind") {
  const SystemSpec sys = make_free_rigid_body(InertiaOperator::diagonal(1, 1, 1));
  CHECK_THROWS_AS(make_state(sys, 0.0, SpherePoint{Vec3(1, 0, 0)}, algebra3(Vec3(1, 0, 0))),
                  std::invalid_argument);
}
