#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epmech/lie_algebra.hpp"

using namespace epmech;

namespace {

AlgebraVector alg(std::initializer_list<double> v) {
  AlgebraVector out = AlgebraVector::zero(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out.coeffs[i++] = x;
  return out;
}

DualVector dual(std::initializer_list<double> v) {
  DualVector out = DualVector::zero(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out.coeffs[i++] = x;
  return out;
}

// Heisenberg algebra: [e1, e2] = e3, every other bracket zero.
StructureConstants heisenberg() {
  std::vector<Eigen::MatrixXd> c(3, Eigen::MatrixXd::Zero(3, 3));
  c[2](0, 1) = 1.0;
  c[2](1, 0) = -1.0;
  return {"heisenberg", c};
}

}  // namespace

TEST_CASE("so3 bracket is the vector cross product") {
  const StructureConstants sc = StructureConstants::so3();
  CHECK(sc.dim() == 3);

  const AlgebraVector e1 = alg({1, 0, 0});
  const AlgebraVector e2 = alg({0, 1, 0});
  const AlgebraVector b = bracket(sc, e1, e2);
  CHECK(b.coeffs[0] == 0.0);
  CHECK(b.coeffs[1] == 0.0);
  CHECK(b.coeffs[2] == 1.0);

  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Vector3d v(u(rng), u(rng), u(rng));
    const Eigen::Vector3d x(u(rng), u(rng), u(rng));
    const AlgebraVector got = bracket(sc, AlgebraVector{v}, AlgebraVector{x});
    CHECK((Eigen::Vector3d(got.coeffs) - v.cross(x)).norm() < 1e-15);
  }
}

TEST_CASE("bracket is antisymmetric") {
  for (const StructureConstants& sc : {StructureConstants::so3(), heisenberg()}) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
      AlgebraVector v = AlgebraVector::zero(3), x = AlgebraVector::zero(3);
      for (int k = 0; k < 3; ++k) {
        v.coeffs[k] = u(rng);
        x.coeffs[k] = u(rng);
      }
      const auto vx = bracket(sc, v, x);
      const auto xv = bracket(sc, x, v);
      CHECK((vx.coeffs + xv.coeffs).norm() < 1e-15);
    }
  }
}

TEST_CASE("abelian algebra has zero bracket and coadjoint action") {
  const StructureConstants sc = StructureConstants::abelian(4);
  const AlgebraVector v = alg({1, -2, 3, 0.5});
  const AlgebraVector x = alg({0.1, 7, -1, 2});
  CHECK(bracket(sc, v, x).coeffs.norm() == 0.0);
  CHECK(ad_star(sc, v, dual({1, 1, 1, 1})).coeffs.norm() == 0.0);
}

TEST_CASE("pairing is the coordinate dual pairing") {
  CHECK(pairing(dual({1, 2, 3}), alg({4, 5, 6})) == doctest::Approx(32.0).epsilon(1e-15));
}

TEST_CASE("coadjoint operator satisfies its defining identity") {
  // <ad*_V xi, X> = -<xi, [V, X]> for all X, on both test algebras.
  for (const StructureConstants& sc : {StructureConstants::so3(), heisenberg()}) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 10; ++trial) {
      AlgebraVector v = AlgebraVector::zero(3), x = AlgebraVector::zero(3);
      DualVector xi = DualVector::zero(3);
      for (int k = 0; k < 3; ++k) {
        v.coeffs[k] = u(rng);
        x.coeffs[k] = u(rng);
        xi.coeffs[k] = u(rng);
      }
      const double lhs = pairing(ad_star(sc, v, xi), x);
      const double rhs = -pairing(xi, bracket(sc, v, x));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
  }
}

TEST_CASE("so3 coadjoint action in coordinates: ad*_{e1} e2* = e3*") {
  const StructureConstants sc = StructureConstants::so3();
  const DualVector got = ad_star(sc, alg({1, 0, 0}), dual({0, 1, 0}));
  CHECK(got.coeffs[0] == 0.0);
  CHECK(got.coeffs[1] == 0.0);
  CHECK(got.coeffs[2] == 1.0);

  // and in general ad*_V xi = V x xi
  const Eigen::Vector3d v(0.3, -1.2, 0.7), xi(2.0, 0.1, -0.4);
  const DualVector g2 = ad_star(sc, AlgebraVector{v}, DualVector{xi});
  CHECK((Eigen::Vector3d(g2.coeffs) - v.cross(xi)).norm() < 1e-15);
}

TEST_CASE("Jacobi identity holds for genuine algebras") {
  CHECK(check_jacobi(StructureConstants::so3()) == 0.0);
  CHECK(check_jacobi(StructureConstants::abelian(3)) == 0.0);
  CHECK(check_jacobi(heisenberg()) == 0.0);
}

TEST_CASE("Jacobi diagnostic flags a broken antisymmetry slot at its size") {
  std::vector<Eigen::MatrixXd> c;
  const StructureConstants so3 = StructureConstants::so3();
  for (int i = 0; i < 3; ++i) c.push_back(so3.component(i));
  c[2](0, 1) += 0.1;
  const StructureConstants broken("so3-broken", c, /*checked=*/false);
  CHECK(check_jacobi(broken) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("antisymmetry-preserving rescalings remain Lie algebras") {
  // Stretching one output component gives the bracket T(a x b) with
  // symmetric T, which still satisfies Jacobi; the diagnostic must not fire.
  std::vector<Eigen::MatrixXd> c;
  const StructureConstants so3 = StructureConstants::so3();
  for (int i = 0; i < 3; ++i) c.push_back(so3.component(i));
  c[2] *= 1.1;
  CHECK(check_jacobi(StructureConstants("so3-scaled", c)) < 1e-15);
}

TEST_CASE("constructor rejects non-antisymmetric tensors unless told not to") {
  std::vector<Eigen::MatrixXd> c(2, Eigen::MatrixXd::Zero(2, 2));
  c[0](0, 1) = 1.0;  // c^0_{10} missing
  CHECK_THROWS_AS(StructureConstants("bad", c), std::invalid_argument);
  CHECK_NOTHROW(StructureConstants("bad-but-allowed", c, false));
}

TEST_CASE("dimension mismatches are rejected") {
  const StructureConstants sc = StructureConstants::so3();
  CHECK_THROWS_AS(bracket(sc, alg({1, 2}), alg({1, 2, 3})), std::invalid_argument);
  CHECK_THROWS_AS(ad_star(sc, alg({1, 2, 3}), dual({1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(pairing(dual({1}), alg({1, 2})), std::invalid_argument);
}
