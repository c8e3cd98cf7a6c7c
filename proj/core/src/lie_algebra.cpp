#include "epmech/lie_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace epmech {

namespace {

void require_dim(int expected, int got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (expected " +
                                std::to_string(expected) + ", got " + std::to_string(got) + ")");
  }
}

}  // namespace

StructureConstants::StructureConstants(std::string name, std::vector<Eigen::MatrixXd> c, bool checked)
    : name_(std::move(name)), dim_(static_cast<int>(c.size())), c_(std::move(c)) {
  if (dim_ == 0) throw std::invalid_argument("StructureConstants: empty tensor");
  for (const auto& m : c_) {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw std::invalid_argument("StructureConstants: tensor slices must be dim x dim");
    }
  }
  if (checked) {
    for (int i = 0; i < dim_; ++i) {
      const double asym = (c_[i] + c_[i].transpose()).cwiseAbs().maxCoeff();
      if (asym > 1e-14) {
        throw std::invalid_argument("StructureConstants '" + name_ +
                                    "': antisymmetry violated in lower indices");
      }
    }
  }
}

StructureConstants StructureConstants::so3() {
  std::vector<Eigen::MatrixXd> c(3, Eigen::MatrixXd::Zero(3, 3));
  // c^i_{sk} = epsilon_{isk}
  c[0](1, 2) = 1.0;
  c[0](2, 1) = -1.0;
  c[1](2, 0) = 1.0;
  c[1](0, 2) = -1.0;
  c[2](0, 1) = 1.0;
  c[2](1, 0) = -1.0;
  return StructureConstants("so3", std::move(c));
}

StructureConstants StructureConstants::abelian(int n) {
  if (n < 1) throw std::invalid_argument("StructureConstants::abelian: n must be >= 1");
  std::vector<Eigen::MatrixXd> c(n, Eigen::MatrixXd::Zero(n, n));
  return StructureConstants("abelian" + std::to_string(n), std::move(c));
}

AlgebraVector bracket(const StructureConstants& sc, const AlgebraVector& V, const AlgebraVector& X) {
  require_dim(sc.dim(), V.dim(), "bracket: first argument");
  require_dim(sc.dim(), X.dim(), "bracket: second argument");
  Eigen::VectorXd out(sc.dim());
  for (int i = 0; i < sc.dim(); ++i) {
    out[i] = V.coeffs.dot(sc.component(i) * X.coeffs);
  }
  return AlgebraVector(std::move(out));
}

double pairing(const DualVector& xi, const AlgebraVector& X) {
  require_dim(xi.dim(), X.dim(), "pairing");
  return xi.coeffs.dot(X.coeffs);
}

DualVector ad_star(const StructureConstants& sc, const AlgebraVector& V, const DualVector& xi) {
  require_dim(sc.dim(), V.dim(), "ad_star: algebra argument");
  require_dim(sc.dim(), xi.dim(), "ad_star: dual argument");
  // <ad*_V xi, X> = -<xi, [V, X]>  =>  (ad*_V xi)_k = -sum_{i,s} xi_i c^i_{sk} V^s
  Eigen::VectorXd out = Eigen::VectorXd::Zero(sc.dim());
  for (int i = 0; i < sc.dim(); ++i) {
    out.noalias() -= xi.coeffs[i] * (sc.component(i).transpose() * V.coeffs);
  }
  return DualVector(std::move(out));
}

double check_jacobi(const StructureConstants& sc) {
  const int r = sc.dim();
  double worst = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      for (int k = 0; k < r; ++k) {
        for (int l = 0; l < r; ++l) {
          double s = 0.0;
          for (int m = 0; m < r; ++m) {
            s += sc.c(m, i, j) * sc.c(l, m, k);
            s += sc.c(m, j, k) * sc.c(l, m, i);
            s += sc.c(m, k, i) * sc.c(l, m, j);
          }
          worst = std::max(worst, std::abs(s));
        }
      }
    }
  }
  return worst;
}

}  // namespace epmech
