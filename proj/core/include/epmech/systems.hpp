#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "epmech/lie_algebra.hpp"
#include "epmech/so3.hpp"

/// Mechanical systems posed in the velocity-map formulation: a configuration
/// space Q, a Lie algebra g acting on Q through an anchor map phi, and a
/// reduced Lagrangian Lbar(x, V) on Q x g.  Motions satisfy the
/// Euler-Poincare equation for the momentum d2Lbar together with the
/// compatibility condition dx/dt = phi(x, V).
namespace epmech {

/// Point on a sphere of fixed radius centred at the origin, stored in
/// ambient coordinates.
struct SpherePoint {
  Vec3 x;
};

/// Configuration point: a rotation (rigid systems), a sphere point
/// (pendulum), or a plain vector (abelian systems).
using ConfigPoint = std::variant<Rotation, SpherePoint, Eigen::VectorXd>;

const Rotation& as_rotation(const ConfigPoint& q);
const SpherePoint& as_sphere(const ConfigPoint& q);
const Eigen::VectorXd& as_vector(const ConfigPoint& q);
std::string config_kind(const ConfigPoint& q);

/// Symmetric positive-definite inertia operator g -> g* on so(3).
class InertiaOperator {
public:
  explicit InertiaOperator(const Mat3& m);
  static InertiaOperator diagonal(double i1, double i2, double i3);

  const Mat3& matrix() const { return mat_; }
  const Mat3& inverse() const { return inv_; }
  DualVector apply(const AlgebraVector& omega) const;
  AlgebraVector solve(const DualVector& mu) const;

private:
  Mat3 mat_;
  Mat3 inv_;
};

/// Named conserved (or monitored) quantity along a trajectory.
struct InvariantSpec {
  std::string name;
  std::function<double(const ConfigPoint&, const AlgebraVector&, const DualVector&)> eval;
  double default_tol = 1e-7;  // relative drift tolerance
  double scale_floor = 0.0;   // denominator floor for the relative drift
};

/// Immutable description of one system.  All callables are pure; instances
/// may be shared freely across threads after construction.
///
/// Representation of the configuration differential d1Lbar by kind:
///   Rotation  - body-trivialized: component k is the derivative of
///               Lbar(gamma exp(s e_k^), V) at s = 0,
///   Sphere    - ambient gradient w.r.t. x (only its tangential part enters),
///   Vector    - plain gradient.
/// Which ConfigPoint alternative a system's maps expect.
enum class ConfigKind { rotation, sphere, vector };

struct SystemSpec {
  std::string id;
  StructureConstants sc = StructureConstants::abelian(1);
  ConfigKind config_kind = ConfigKind::vector;
  int config_dim = 0;   // n = dim Q
  int algebra_dim = 0;  // r = dim g
  bool d1_lbar_zero = false;

  std::function<double(const ConfigPoint&, const AlgebraVector&)> lbar;
  std::function<Eigen::VectorXd(const ConfigPoint&, const AlgebraVector&)> d1_lbar;
  std::function<DualVector(const ConfigPoint&, const AlgebraVector&)> d2_lbar;
  std::function<AlgebraVector(const ConfigPoint&, const DualVector&)> legendre_inverse;

  /// Value of the anchor phi(x, V) in the ambient representation:
  /// 3x3 matrix gamma hat(V) for rotations, 3x1 for spheres, n x 1 otherwise.
  std::function<Eigen::MatrixXd(const ConfigPoint&, const AlgebraVector&)> anchor;

  /// Full Hamiltonian H(x, mu) obtained from the Legendre transform.
  std::function<double(const ConfigPoint&, const DualVector&)> hamiltonian_full;
  /// Reduced Hamiltonian on g* and its differential, present only when H is
  /// a function of the trivialized momentum alone.
  std::function<double(const DualVector&)> hamiltonian_h;
  std::function<AlgebraVector(const DualVector&)> dh;
  /// Advected quantity for broken-symmetry systems (heavy top: the vertical
  /// axis seen from the body, Gamma = R^T z).
  std::function<Vec3(const ConfigPoint&)> advected;
  /// Extended reduced Hamiltonian h_ext(mu, Gamma) when `advected` is set.
  std::function<double(const DualVector&, const Vec3&)> hamiltonian_ext;

  std::vector<InvariantSpec> invariants;
  std::map<std::string, double> parameters;

  bool has_hamiltonian_h() const { return static_cast<bool>(hamiltonian_h); }
  bool has_extension() const { return static_cast<bool>(hamiltonian_ext); }
};

/// State of an Euler-Poincare evolution; mu is the evolved variable and V the
/// algebra velocity matched to it through the fiber derivative.
struct EPState {
  double t = 0.0;
  ConfigPoint gamma;
  AlgebraVector V;
  DualVector mu;
};

EPState make_state(const SystemSpec& sys, double t, ConfigPoint gamma, const AlgebraVector& V);
EPState make_state_from_momentum(const SystemSpec& sys, double t, ConfigPoint gamma,
                                 const DualVector& mu);

/// Free rigid body about a fixed point: Lbar(R, Omega) = 1/2 <I Omega, Omega>,
/// independent of R.
SystemSpec make_free_rigid_body(const InertiaOperator& inertia);

/// Heavy top: rigid body with centre of mass offset `com` (body frame) in a
/// uniform field of strength `gravity` pulling along -z.
SystemSpec make_heavy_top(const InertiaOperator& inertia, double mass, double gravity,
                          const Vec3& com);

/// Spherical pendulum: point mass on a sphere of radius `radius`, gravity
/// given as an acceleration vector.  The sphere action is underdetermined
/// (dim g = 3 > dim Q = 2); velocities are recovered from momenta by the
/// minimal-norm lift Omega = (x cross v)/radius^2.
SystemSpec make_spherical_pendulum(double mass, double radius, const Vec3& gravity);

/// Analytic data for an abelian system on R^n.
struct AbelianLagrangian {
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> L;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> dL_dx;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> dL_dv;
  /// Solves dL_dv(x, v) = mu for v.
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&)> velocity_of;
};

/// Abelian R^n system; the Euler-Poincare equation degenerates to the
/// Euler-Lagrange equations.
SystemSpec make_abelian_system(int n, const std::string& id, AbelianLagrangian lagrangian);

/// 1-d harmonic oscillator as an abelian system.
SystemSpec make_harmonic_oscillator(double mass, double stiffness);

/// Force map: component k is the derivative of Lbar(., V) along the
/// fundamental vector field of the k-th basis generator, evaluated at x.
/// Vanishes identically when d1_lbar_zero is set.
DualVector omega_force(const SystemSpec& sys, const ConfigPoint& x, const AlgebraVector& V);

/// Numerical self-checks of a system's analytic data (anchor linearity,
/// finite-difference agreement of d1Lbar and d2Lbar).  Returns the worst
/// residual found; used by tests and the verification suites.
double validate_system(const SystemSpec& sys, unsigned seed = 7, int samples = 20);

}  // namespace epmech
