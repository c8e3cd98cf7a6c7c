#include "epmech/so3.hpp"

#include <cmath>
#include <stdexcept>

namespace epmech {

double rotation_defect(const Mat3& m) {
  return (m.transpose() * m - Mat3::Identity()).norm();
}

bool is_rotation(const Mat3& m, double tol) {
  return rotation_defect(m) < tol && m.determinant() > 0.0;
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("vee: matrix is not antisymmetric within 1e-12");
  }
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

Rotation exp_so3(const Vec3& w) {
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a, b;  // R = I + a hat(w) + b hat(w)^2
  if (theta < 1e-4) {
    a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Mat3 K = hat(w);
  return Rotation(Mat3::Identity() + a * K + b * (K * K));
}

Rotation exp_so3(const AlgebraVector& w) { return exp_so3(as_vec3(w)); }

AlgebraVector Ad(const Rotation& g, const AlgebraVector& X) {
  return algebra3(g.m * as_vec3(X));
}

Vec3 Ad(const Rotation& g, const Vec3& X) { return g.m * X; }

DualVector Ad_star(const Rotation& g, const DualVector& xi) {
  return dual3(g.m * as_vec3(xi));
}

Rotation reorthonormalize(const Rotation& g) {
  const double defect = rotation_defect(g.m);
  if (defect >= 0.1) {
    throw std::invalid_argument("reorthonormalize: input too far from SO(3) (defect >= 0.1)");
  }
  Mat3 r = g.m;
  for (int it = 0; it < 20 && rotation_defect(r) > 1e-15; ++it) {
    r = 0.5 * (r + r.inverse().transpose());
  }
  if (r.determinant() < 0.0) {
    throw std::invalid_argument("reorthonormalize: input is orientation-reversing");
  }
  return Rotation(r);
}

Vec3 dexpinv_body(const Vec3& sigma, const Vec3& A) {
  const Vec3 sA = sigma.cross(A);
  return A + 0.5 * sA + sigma.cross(sA) / 12.0;
}

Vec3 dexpinv_spatial(const Vec3& sigma, const Vec3& A) {
  const Vec3 sA = sigma.cross(A);
  return A - 0.5 * sA + sigma.cross(sA) / 12.0;
}

Vec3 as_vec3(const AlgebraVector& v) {
  if (v.dim() != 3) throw std::invalid_argument("as_vec3: algebra vector is not 3-dimensional");
  return Vec3(v.coeffs[0], v.coeffs[1], v.coeffs[2]);
}

Vec3 as_vec3(const DualVector& v) {
  if (v.dim() != 3) throw std::invalid_argument("as_vec3: dual vector is not 3-dimensional");
  return Vec3(v.coeffs[0], v.coeffs[1], v.coeffs[2]);
}

AlgebraVector algebra3(const Vec3& v) {
  Eigen::VectorXd c(3);
  c << v.x(), v.y(), v.z();
  return AlgebraVector(std::move(c));
}

DualVector dual3(const Vec3& v) {
  Eigen::VectorXd c(3);
  c << v.x(), v.y(), v.z();
  return DualVector(std::move(c));
}

}  // namespace epmech
