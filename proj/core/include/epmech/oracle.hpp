#pragma once

#include <vector>

#include "epmech/integrators.hpp"

/// Independent cross-checks of the mechanics core: a constrained Cartesian
/// pendulum simulation that never touches the algebra machinery, truncated
/// series for the rotation exponential, finite-difference probes of the force
/// map, step-refined reference solutions, and a discrete action principle
/// test that distinguishes genuine solutions from corrupted ones.
namespace epmech {

/// Matrix exponential by plain series summation, sum_{n<terms} A^n / n!.
/// Accurate to ~1e-12 for ||A|| <~ 1.5 with the default 20 terms; used only
/// to cross-check the closed-form exponential.
Mat3 exp_series(const Mat3& a, int terms = 20);

struct CartesianState {
  Vec3 x;
  Vec3 v;
};

/// Acceleration of a point mass constrained to |x| = radius under gravity g:
/// a = g + lambda x with the multiplier lambda = -(g.x + |v|^2) / radius^2
/// eliminating the radial acceleration.
CartesianState pendulum_cartesian_rhs(const CartesianState& s, const Vec3& g, double radius);

struct CartesianTrajectory {
  std::vector<double> t;
  std::vector<CartesianState> states;
  /// Largest single-step constraint correction applied (position and velocity
  /// projections combined).  A healthy run stays far below any agreement
  /// tolerance; consumers should reject runs where this grows large.
  double max_projection = 0.0;
};

/// Pendulum reference solution in ambient coordinates: flat RK4 on (x, v)
/// with the multiplier force, followed by projection of x onto the sphere
/// and v onto its tangent plane each step.  Throws when the initial state is
/// off the constraint (position to 1e-9 relative, velocity tangency to 1e-9).
CartesianTrajectory simulate_pendulum_cartesian(const CartesianState& init, const Vec3& g,
                                                double radius, const StepperConfig& cfg);

struct ForceCheckResult {
  Eigen::VectorXd analytic;           // omega_force components
  Eigen::VectorXd finite_difference;  // centered flow derivative of Lbar
  double max_residual = 0.0;
};

/// Compares the force map against centered finite differences of Lbar along
/// the group flow of each basis generator (the same flows advance_config
/// uses, so the probe is exactly the derivative the force map claims to be).
/// eps must lie in [1e-8, 1e-4].
ForceCheckResult fd_force_check(const SystemSpec& sys, const ConfigPoint& q,
                                const AlgebraVector& V, double eps);

/// Reference trajectory at dt / refine with records aligned to the base
/// configuration's sample times.  Throws when the refined step would drop
/// below 1e-8.
Trajectory richardson_reference(const SystemSpec& sys, const EPState& init,
                                const StepperConfig& cfg, int refine = 100);

/// Trapezoid discretization of the action integral of Lbar along recorded
/// samples.  Needs at least two samples.
double discrete_action(const SystemSpec& sys, const Trajectory& traj);

/// Action change I[perturbed] - I[trajectory] under a seed-determined
/// variation that vanishes at both endpoints.  The variation acts through
/// the group: configurations move along advance_config(gamma, eps * delta)
/// and velocities pick up the matching commutator term, so the perturbed
/// curve satisfies the kinematic constraint to first order.  On a solution
/// the result is O(eps^2); on a non-solution it is O(eps).
double stationarity_delta(const SystemSpec& sys, const Trajectory& traj, double eps,
                          unsigned seed = 11);

struct StationarityResult {
  double delta_coarse = 0.0;  // eps = 1e-2
  double delta_fine = 0.0;    // eps = 1e-3
  double ratio = 0.0;         // |delta_coarse| / |delta_fine|
};

/// Runs stationarity_delta at eps = 1e-2 and 1e-3.  The ratio sits near 100
/// when the trajectory solves the equations of motion (quadratic remainder)
/// and near 10 when it does not (linear first variation).
StationarityResult stationarity_check(const SystemSpec& sys, const Trajectory& traj,
                                      unsigned seed = 11);

}  // namespace epmech
