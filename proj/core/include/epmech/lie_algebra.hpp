#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

/// Finite-dimensional Lie-algebra primitives: structure constants, bracket,
/// dual pairing and the coadjoint operator ad*.  Only the algebras needed by
/// the mechanical systems in this library are provided as factories (so(3)
/// and abelian R^n), but all operations work for any structure-constant set.
namespace epmech {

/// Element of a Lie algebra g, expressed as coefficients in a fixed basis.
struct AlgebraVector {
  Eigen::VectorXd coeffs;

  AlgebraVector() = default;
  explicit AlgebraVector(Eigen::VectorXd c) : coeffs(std::move(c)) {}
  static AlgebraVector zero(int dim) { return AlgebraVector(Eigen::VectorXd::Zero(dim)); }

  int dim() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }
  double operator[](int i) const { return coeffs[i]; }
  double& operator[](int i) { return coeffs[i]; }

  AlgebraVector operator+(const AlgebraVector& o) const { return AlgebraVector(coeffs + o.coeffs); }
  AlgebraVector operator-(const AlgebraVector& o) const { return AlgebraVector(coeffs - o.coeffs); }
  AlgebraVector operator-() const { return AlgebraVector(-coeffs); }
  AlgebraVector operator*(double s) const { return AlgebraVector(coeffs * s); }
  friend AlgebraVector operator*(double s, const AlgebraVector& v) { return v * s; }
};

/// Element of the dual space g*, expressed in the dual basis.  Kept as a
/// distinct type from AlgebraVector so momenta and velocities cannot be mixed
/// silently.
struct DualVector {
  Eigen::VectorXd coeffs;

  DualVector() = default;
  explicit DualVector(Eigen::VectorXd c) : coeffs(std::move(c)) {}
  static DualVector zero(int dim) { return DualVector(Eigen::VectorXd::Zero(dim)); }

  int dim() const { return static_cast<int>(coeffs.size()); }
  double norm() const { return coeffs.norm(); }
  double operator[](int i) const { return coeffs[i]; }
  double& operator[](int i) { return coeffs[i]; }

  DualVector operator+(const DualVector& o) const { return DualVector(coeffs + o.coeffs); }
  DualVector operator-(const DualVector& o) const { return DualVector(coeffs - o.coeffs); }
  DualVector operator-() const { return DualVector(-coeffs); }
  DualVector operator*(double s) const { return DualVector(coeffs * s); }
  friend DualVector operator*(double s, const DualVector& v) { return v * s; }
};

/// Structure constants c^i_{sk} of an r-dimensional Lie algebra with respect
/// to a fixed basis: [e_s, e_k] = sum_i c^i_{sk} e_i.
///
/// Storage: one r x r matrix per upper index i, entry (s, k) = c^i_{sk}.
class StructureConstants {
public:
  /// Validates antisymmetry c^i_{sk} = -c^i_{ks} to 1e-14 unless `checked`
  /// is false (raw tensors are useful for testing the Jacobi diagnostic).
  StructureConstants(std::string name, std::vector<Eigen::MatrixXd> c, bool checked = true);

  /// so(3) in the basis where the bracket is the vector cross product:
  /// c^i_{sk} = epsilon_{isk}.
  static StructureConstants so3();
  /// Abelian R^n: all constants vanish.
  static StructureConstants abelian(int n);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  double c(int i, int s, int k) const { return c_[i](s, k); }
  const Eigen::MatrixXd& component(int i) const { return c_[i]; }

private:
  std::string name_;
  int dim_ = 0;
  std::vector<Eigen::MatrixXd> c_;
};

/// [V, X]^i = sum_{s,k} c^i_{sk} V^s X^k.
AlgebraVector bracket(const StructureConstants& sc, const AlgebraVector& V, const AlgebraVector& X);

/// Natural pairing <xi, X> between g* and g.
double pairing(const DualVector& xi, const AlgebraVector& X);

/// Coadjoint operator, fixed by <ad*_V xi, X> = -<xi, [V, X]> for all X.
/// On so(3) this is ad*_V xi = V x xi.
DualVector ad_star(const StructureConstants& sc, const AlgebraVector& V, const DualVector& xi);

/// Max over (i, j, k, l) of |sum_m (c^m_{ij} c^l_{mk} + c^m_{jk} c^l_{mi}
/// + c^m_{ki} c^l_{mj})|; zero exactly when the constants satisfy the Jacobi
/// identity.
double check_jacobi(const StructureConstants& sc);

}  // namespace epmech
