#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epmech/oracle.hpp"

using namespace epmech;

TEST_CASE("series exponential: identity and agreement with the closed form") {
  CHECK((exp_series(Mat3::Zero()) - Mat3::Identity()).norm() == 0.0);
  const Vec3 w(0.4, -0.9, 0.7);
  CHECK((exp_series(hat(w)) - exp_so3(w).m).norm() < 1e-13);
}

TEST_CASE("cartesian pendulum right-hand side: frozen multiplier") {
  const CartesianState s{Vec3(1, 0, 0), Vec3(0, 1.5, 0)};
  const CartesianState d = pendulum_cartesian_rhs(s, Vec3(0, 0, -9.81), 1.0);
  CHECK((d.x - Vec3(0, 1.5, 0)).norm() == 0.0);
  // lambda = -(g.x + |v|^2)/R^2 = -2.25; a = g + lambda x
  CHECK((d.v - Vec3(-2.25, 0.0, -9.81)).norm() < 1e-15);
}

TEST_CASE("cartesian pendulum rejects off-constraint starts") {
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 0.1;
  const Vec3 g(0, 0, -9.81);
  CHECK_THROWS_AS(simulate_pendulum_cartesian({Vec3(1.1, 0, 0), Vec3(0, 1, 0)}, g, 1.0, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_pendulum_cartesian({Vec3(1, 0, 0), Vec3(0.5, 1, 0)}, g, 1.0, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(simulate_pendulum_cartesian({Vec3(1, 0, 0), Vec3(0, 1, 0)}, g, -1.0, cfg),
                  std::invalid_argument);
}

TEST_CASE("cartesian pendulum: free motion follows a great circle") {
  // Without gravity the multiplier force is centripetal only: from x0 = R e1
  // with speed s along e2 the solution is the circle
  // x(t) = R (cos(st/R), sin(st/R), 0).
  const double R = 2.0;
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 2.0;
  cfg.record_every = 200;
  const CartesianTrajectory traj =
      simulate_pendulum_cartesian({Vec3(R, 0, 0), Vec3(0, 1, 0)}, Vec3::Zero(), R, cfg);
  REQUIRE(traj.states.size() == 11);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    const double phase = traj.t[i] / R;
    const Vec3 expected(R * std::cos(phase), R * std::sin(phase), 0.0);
    CHECK((traj.states[i].x - expected).norm() < 1e-10);
  }
  CHECK(traj.max_projection < 1e-12);
}

TEST_CASE("force map against centered differences along group flows") {
  const SystemSpec top =
      make_heavy_top(InertiaOperator::diagonal(1.0, 2.0, 3.0), 1.0, 9.81, Vec3(0, 0, 0.3));
  const ConfigPoint g = exp_so3(Vec3(0.4, -0.2, 0.7));
  const AlgebraVector w = algebra3(Vec3(0.5, 0.3, 0.8));
  const ForceCheckResult r = fd_force_check(top, g, w, 1e-5);
  CHECK(r.max_residual < 1e-9);
  CHECK(r.analytic.size() == 3);

  // A configuration-independent Lagrangian has an identically zero force,
  // and the finite difference is exactly zero as well.
  const SystemSpec rb = make_free_rigid_body(InertiaOperator::diagonal(1.0, 2.0, 3.0));
  CHECK(fd_force_check(rb, g, w, 1e-5).max_residual == 0.0);

  const SystemSpec pend = make_spherical_pendulum(1.0, 1.0, Vec3(0, 0, -9.81));
  const Vec3 x0 = Vec3(1.0, 0.2, -0.3).normalized();
  const AlgebraVector om = algebra3(x0.cross(Vec3(0.0, 1.5, 0.4)));
  CHECK(fd_force_check(pend, SpherePoint{x0}, om, 1e-5).max_residual < 1e-9);

  CHECK_THROWS_AS(fd_force_check(top, g, w, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(fd_force_check(top, g, w, 1e-3), std::invalid_argument);
}

TEST_CASE("refined reference aligns its samples with the base grid") {
  const SystemSpec sys = make_harmonic_oscillator(1.0, 1.0);
  Eigen::VectorXd x(1), v(1);
  x[0] = 1.0;
  v[0] = 0.0;
  const EPState init = make_state(sys, 0.0, x, AlgebraVector{v});
  StepperConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_end = 1.0;
  cfg.record_every = 20;
  const Trajectory base = simulate(sys, init, cfg);
  const Trajectory ref = richardson_reference(sys, init, cfg);
  REQUIRE(base.samples.size() == ref.samples.size());
  for (std::size_t i = 0; i < base.samples.size(); ++i) {
    CHECK(ref.samples[i].t == doctest::Approx(base.samples[i].t).epsilon(1e-12));
  }
  // the refined run is strictly more accurate than the base run
  const double base_err = std::abs(as_vector(base.samples.back().gamma)[0] - std::cos(1.0));
  const double ref_err = std::abs(as_vector(ref.samples.back().gamma)[0] - std::cos(1.0));
  CHECK(ref_err < 1e-4 * base_err + 1e-14);

  CHECK_THROWS_AS(richardson_reference(sys, init, cfg, 1), std::invalid_argument);
  StepperConfig tiny = cfg;
  tiny.dt = 1e-7;
  CHECK_THROWS_AS(richardson_reference(sys, init, tiny), std::invalid_argument);
}

TEST_CASE("discrete action: trapezoid rule is exact for linear integrands") {
  // Lbar = x with x(t) = t gives action over [0, 1] of exactly 1/2.
  AbelianLagrangian lag;
  lag.L = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) { return x[0]; };
  lag.dL_dx = [](const Eigen::VectorXd& x, const Eigen::VectorXd&) {
    return Eigen::VectorXd(Eigen::VectorXd::Ones(x.size()));
  };
  lag.dL_dv = [](const Eigen::VectorXd&, const Eigen::VectorXd& v) {
    return Eigen::VectorXd(Eigen::VectorXd::Zero(v.size()));
  };
  lag.velocity_of = [](const Eigen::VectorXd&, const Eigen::VectorXd& mu) {
    return Eigen::VectorXd(mu);
  };
  const SystemSpec sys = make_abelian_system(1, "linear", std::move(lag));

  Trajectory traj;
  traj.system_id = sys.id;
  for (int k = 0; k <= 4; ++k) {
    TrajectorySample s;
    s.t = 0.25 * k;
    Eigen::VectorXd x(1);
    x[0] = s.t;
    s.gamma = x;
    s.V = AlgebraVector::zero(1);
    s.mu = DualVector::zero(1);
    traj.samples.push_back(s);
  }
  CHECK(discrete_action(sys, traj) == doctest::Approx(0.5).epsilon(1e-15));

  traj.samples.resize(1);
  CHECK_THROWS_AS(discrete_action(sys, traj), std::invalid_argument);
}

TEST_CASE("stationarity: quadratic remainder on solutions, linear off them") {
  const SystemSpec sys = make_harmonic_oscillator(1.0, 1.0);
  Eigen::VectorXd x(1), v(1);
  x[0] = 1.0;
  v[0] = 0.0;
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  cfg.record_every = 10;
  const Trajectory traj = simulate(sys, make_state(sys, 0.0, x, AlgebraVector{v}), cfg);

  const StationarityResult good = stationarity_check(sys, traj);
  CHECK(good.ratio > 80.0);
  CHECK(good.ratio < 120.0);

  Trajectory bad = traj;
  for (auto& s : bad.samples) s.V.coeffs[0] += 0.5 * std::sin(3.0 * s.t);
  const StationarityResult off = stationarity_check(sys, bad);
  CHECK(off.ratio > 8.0);
  CHECK(off.ratio < 13.0);

  Trajectory tiny = traj;
  tiny.samples.resize(5);
  CHECK_THROWS_AS(stationarity_check(sys, tiny), std::invalid_argument);
}

TEST_CASE("stationarity on the rotation group") {
  const SystemSpec sys = make_free_rigid_body(InertiaOperator::diagonal(1.0, 2.0, 3.0));
  StepperConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 10.0;
  cfg.record_every = 10;
  const EPState init = make_state(sys, 0.0, Rotation::identity(), algebra3(Vec3(1.0, 0.1, 0.1)));
  const Trajectory traj = simulate(sys, init, cfg);
  const StationarityResult good = stationarity_check(sys, traj);
  CHECK(good.ratio > 80.0);
  CHECK(good.ratio < 120.0);
}
