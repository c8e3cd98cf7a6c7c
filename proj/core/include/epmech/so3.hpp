#pragma once

#include <Eigen/Dense>

#include "epmech/lie_algebra.hpp"

/// SO(3)-specific numerics: the hat/vee isomorphism, the Rodrigues
/// exponential, adjoint actions and orthogonality repair.
namespace epmech {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Proper rotation matrix, the only non-abelian group element type in scope.
struct Rotation {
  Mat3 m;

  Rotation() : m(Mat3::Identity()) {}
  explicit Rotation(Mat3 r) : m(std::move(r)) {}
  static Rotation identity() { return Rotation(); }

  Rotation operator*(const Rotation& o) const { return Rotation(m * o.m); }
  Rotation transpose() const { return Rotation(m.transpose()); }
};

/// ||R^T R - Id||_F, the group-membership defect monitored by integrators.
double rotation_defect(const Mat3& m);

/// True when rotation_defect < tol and det > 0.
bool is_rotation(const Mat3& m, double tol = 1e-9);

/// hat(v) w = v x w.
Mat3 hat(const Vec3& v);

/// Inverse of hat.  Throws when the matrix is not antisymmetric to 1e-12.
Vec3 vee(const Mat3& m);

/// Rodrigues exponential with a Taylor guard below theta = 1e-4.
Rotation exp_so3(const Vec3& w);
Rotation exp_so3(const AlgebraVector& w);

/// Adjoint action on the algebra; in the cross-product basis Ad_R X = R X.
AlgebraVector Ad(const Rotation& g, const AlgebraVector& X);
Vec3 Ad(const Rotation& g, const Vec3& X);

/// Coadjoint action on the dual, fixed by <Ad*_g xi, Ad_g X> = <xi, X>;
/// in the cross-product basis Ad*_R xi = R xi.
DualVector Ad_star(const Rotation& g, const DualVector& xi);

/// Projects a near-rotation onto SO(3) (Newton iteration for the polar
/// factor).  Throws when the orthogonality defect is >= 0.1; leaves exact
/// rotations fixed to 1e-14 and is idempotent.
Rotation reorthonormalize(const Rotation& g);

/// Solution of gamma' = gamma * hat(A) through gamma0 * exp(sigma): returns
/// d(sigma)/dt given sigma and A, the inverse-differential series truncated
/// after the double bracket (adequate for fourth-order stepping).
Vec3 dexpinv_body(const Vec3& sigma, const Vec3& A);

/// Same for x' = hat(A) x solved through exp(sigma) * x0.
Vec3 dexpinv_spatial(const Vec3& sigma, const Vec3& A);

/// Dimension-checked conversion helpers between the generic algebra types
/// and 3-vectors.
Vec3 as_vec3(const AlgebraVector& v);
Vec3 as_vec3(const DualVector& v);
AlgebraVector algebra3(const Vec3& v);
DualVector dual3(const Vec3& v);

}  // namespace epmech
