#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "platevem/element.hpp"
#include "test_support.hpp"

using namespace platevem;
using testsupport::dof_vector;

namespace {

const std::vector<Vec2> unit_square = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

std::array<double, 6> random_quadratic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::array<double, 6> c;
  for (double& v : c) v = coef(rng);
  return c;
}

// Scaled-basis coefficients of a global quadratic on the given element.
Eigen::Matrix<double, 6, 1> scaled_coefficients(const std::array<double, 6>& c,
                                                const ScaledMonomialBasis& b) {
  const double xc = b.centroid.x(), yc = b.centroid.y(), h = b.h;
  Eigen::Matrix<double, 6, 1> out;
  out(0) = c[0] + c[1] * xc + c[2] * yc + c[3] * xc * xc + c[4] * xc * yc + c[5] * yc * yc;
  out(1) = h * (c[1] + 2.0 * c[3] * xc + c[4] * yc);
  out(2) = h * (c[2] + c[4] * xc + 2.0 * c[5] * yc);
  out(3) = h * h * c[3];
  out(4) = h * h * c[4];
  out(5) = h * h * c[5];
  return out;
}

}  // namespace

TEST_CASE("projector reproduces every scaled monomial on the unit square") {
  const ElementOperators ops = build_element_operators(unit_square, 1.0, 1.0);
  const Eigen::MatrixXd identity = ops.pi_star * ops.dof_matrix;
  CHECK((identity - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("projection of a constant") {
  const ElementOperators ops = build_element_operators(unit_square, 1.0, 1.0);
  const Eigen::VectorXd d = dof_vector(unit_square, testsupport::constant_field(1.0));
  const Eigen::VectorXd c = ops.pi_star * d;
  CHECK(c(0) == doctest::Approx(1.0).epsilon(1e-13));
  for (int a = 1; a < 6; ++a) CHECK(std::abs(c(a)) < 1e-13);
}

TEST_CASE("projection of x^2 in global coordinates") {
  // x^2 = (x_c + h xi)^2 with x_c = 1/2, h = sqrt(2):
  //   0.25 + sqrt(2) xi + 2 xi^2 in the scaled basis.
  const ElementOperators ops = build_element_operators(unit_square, 1.0, 1.0);
  const Eigen::VectorXd d =
      dof_vector(unit_square, testsupport::quadratic_field({0, 0, 0, 1, 0, 0}));
  const Eigen::VectorXd c = ops.pi_star * d;
  CHECK(c(0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(c(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(std::abs(c(2)) < 1e-12);
  CHECK(c(3) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(c(4)) < 1e-12);
  CHECK(std::abs(c(5)) < 1e-12);
}

TEST_CASE("stiffness oracle values on the unit square") {
  const ElementOperators ops = build_element_operators(unit_square, 1.0, 1.0);
  // a(x^2, x^2) = |K| * ||hess||_F^2 = 4, and the stabilization vanishes on P2
  const Eigen::VectorXd dx2 =
      dof_vector(unit_square, testsupport::quadratic_field({0, 0, 0, 1, 0, 0}));
  CHECK(dx2.dot(ops.stiffness * dx2) == doctest::Approx(4.0).epsilon(1e-10));
  const Eigen::VectorXd dxy =
      dof_vector(unit_square, testsupport::quadratic_field({0, 0, 0, 0, 1, 0}));
  CHECK(dxy.dot(ops.stiffness * dxy) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("affine kernel of the stiffness matrix") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const auto ring = testsupport::random_convex_polygon(rng);
    const ElementOperators ops = build_element_operators(ring, 1.0, 1.0);
    const Eigen::VectorXd d = dof_vector(ring, testsupport::affine_field(0.7, -1.3, 2.1));
    CHECK((ops.stiffness * d).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("mass oracle values") {
  const ElementOperators ops = build_element_operators(unit_square, 1.0, 1.0);
  const Eigen::VectorXd one = dof_vector(unit_square, testsupport::constant_field(1.0));
  const Eigen::VectorXd x = dof_vector(unit_square, testsupport::affine_field(0, 1, 0));
  CHECK(one.dot(ops.mass * one) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(one.dot(ops.mass * x) == doctest::Approx(0.5).epsilon(1e-12));

  const std::vector<Vec2> centered = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
  const ElementOperators cops = build_element_operators(centered, 1.0, 1.0);
  const Eigen::VectorXd cone = dof_vector(centered, testsupport::constant_field(1.0));
  const Eigen::VectorXd cx = dof_vector(centered, testsupport::affine_field(0, 1, 0));
  CHECK(std::abs(cone.dot(cops.mass * cx)) < 1e-13);
}

TEST_CASE("projected Hessian of simple fields") {
  const ElementOperators ops = build_element_operators(unit_square, 1.0, 1.0);
  const Eigen::Matrix2d hx2 = projected_hessian(
      ops, dof_vector(unit_square, testsupport::quadratic_field({0, 0, 0, 1, 0, 0})));
  CHECK(hx2(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(hx2(0, 1)) < 1e-12);
  CHECK(std::abs(hx2(1, 1)) < 1e-12);

  const Eigen::Matrix2d haff =
      projected_hessian(ops, dof_vector(unit_square, testsupport::affine_field(1, 2, 3)));
  CHECK(haff.cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::Matrix2d hxy = projected_hessian(
      ops, dof_vector(unit_square, testsupport::quadratic_field({0, 0, 0, 0, 1, 0})));
  CHECK(hxy(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hxy(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(hxy(0, 0)) < 1e-12);
}

TEST_CASE("P2 reproduction on 200 random convex polygons") {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 200; ++i) {
    const auto ring = testsupport::random_convex_polygon(rng);
    const ElementOperators ops = build_element_operators(ring, 1.0, 1.0);
    const auto c = random_quadratic(rng);
    const Eigen::VectorXd d = dof_vector(ring, testsupport::quadratic_field(c));
    const Eigen::Matrix<double, 6, 1> expected = scaled_coefficients(c, ops.basis);
    const Eigen::VectorXd got = ops.pi_star * d;
    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("consistency: dofs(p)^T A dofs(v) equals the exact pairing with the projection") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (int i = 0; i < 40; ++i) {
    const auto ring = testsupport::random_convex_polygon(rng);
    const ElementOperators ops = build_element_operators(ring, 1.0, 1.0);
    const auto c = random_quadratic(rng);
    const Eigen::VectorXd dp = dof_vector(ring, testsupport::quadratic_field(c));
    Eigen::VectorXd dv(3 * ring.size());
    for (int j = 0; j < dv.size(); ++j) dv(j) = unit(rng);

    // a_K(p, Pi v) through the Hessian Gram of the monomial coefficients
    const Eigen::Matrix<double, 6, 1> cp = ops.pi_star * dp;
    const Eigen::Matrix<double, 6, 1> cv = ops.pi_star * dv;
    double exact = 0.0;
    for (int a = 3; a < 6; ++a)
      for (int b = 3; b < 6; ++b)
        exact += cp(a) * cv(b) * ops.area *
                 (ops.basis.hessian(a).cwiseProduct(ops.basis.hessian(b))).sum();
    const double discrete = dp.dot(ops.stiffness * dv);
    CHECK(discrete == doctest::Approx(exact).epsilon(1e-10));
  }
}

TEST_CASE("element matrices are translation invariant") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 10; ++i) {
    auto ring = testsupport::random_convex_polygon(rng);
    const ElementOperators base = build_element_operators(ring, 1.0, 1.0);
    auto moved = ring;
    for (Vec2& p : moved) p += Vec2(13.25, -7.5);
    const ElementOperators shifted = build_element_operators(moved, 1.0, 1.0);
    CHECK((base.stiffness - shifted.stiffness).cwiseAbs().maxCoeff() <
          1e-12 * base.stiffness.cwiseAbs().maxCoeff());
    CHECK((base.mass - shifted.mass).cwiseAbs().maxCoeff() <
          1e-12 * base.mass.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("single-element pencil eigenvalues scale as s^-4") {
  std::vector<Vec2> scaled = unit_square;
  const double s = 3.0;
  for (Vec2& p : scaled) p *= s;
  const ElementOperators base = build_element_operators(unit_square, 1.0, 1.0);
  const ElementOperators big = build_element_operators(scaled, 1.0, 1.0);

  const auto pencil_eigs = [](const ElementOperators& ops) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(ops.stiffness, ops.mass);
    return ges.eigenvalues();
  };
  const Eigen::VectorXd l0 = pencil_eigs(base);
  const Eigen::VectorXd l1 = pencil_eigs(big);
  REQUIRE(l0.size() == l1.size());
  for (int i = 0; i < l0.size(); ++i) {
    if (l0(i) < 1e-9) {
      CHECK(std::abs(l1(i)) < 1e-9);  // affine kernel stays the kernel
    } else {
      CHECK(l1(i) == doctest::Approx(l0(i) / std::pow(s, 4)).epsilon(1e-10));
    }
  }
}

TEST_CASE("symmetry and definiteness of the element matrices") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 25; ++i) {
    const auto ring = testsupport::random_convex_polygon(rng);
    const ElementOperators ops = build_element_operators(ring, 1.0, 1.0);
    const double a_scale = ops.stiffness.cwiseAbs().maxCoeff();
    const double m_scale = ops.mass.cwiseAbs().maxCoeff();
    CHECK((ops.stiffness - ops.stiffness.transpose()).cwiseAbs().maxCoeff() < 1e-12 * a_scale);
    CHECK((ops.mass - ops.mass.transpose()).cwiseAbs().maxCoeff() < 1e-12 * m_scale);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esa(ops.stiffness);
    // exactly three kernel directions (the affine DoF vectors)
    int near_zero = 0;
    for (int j = 0; j < esa.eigenvalues().size(); ++j) {
      CHECK(esa.eigenvalues()(j) > -1e-10 * a_scale);
      if (esa.eigenvalues()(j) < 1e-9 * a_scale) ++near_zero;
    }
    CHECK(near_zero == 3);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esm(ops.mass);
    CHECK(esm.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("monomial moments match the divergence-theorem oracle") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 30; ++i) {
    const auto ring = testsupport::random_convex_polygon(rng);
    const ElementOperators ops = build_element_operators(ring, 1.0, 1.0);
    for (int a = 0; a < 6; ++a)
      for (int b = a; b < 6; ++b) {
        const int p = testsupport::monomial_px(a) + testsupport::monomial_px(b);
        const int q = testsupport::monomial_py(a) + testsupport::monomial_py(b);
        const double oracle =
            testsupport::green_moment(ring, p, q, ops.basis.centroid, ops.basis.h);
        CHECK(ops.moments(a, b) ==
              doctest::Approx(oracle).epsilon(1e-12).scale(ops.area));
      }
  }
}

TEST_CASE("moments are exact on elements with hanging-node collinear vertices") {
  // pentagon = unit square with an extra vertex on the bottom edge
  const std::vector<Vec2> ring = {{0, 0}, {0.5, 0}, {1, 0}, {1, 1}, {0, 1}};
  const ElementOperators ops = build_element_operators(ring, 1.0, 1.0);
  CHECK(ops.area == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ops.moments(0, 0) == doctest::Approx(1.0).epsilon(1e-13));
  const Eigen::MatrixXd identity = ops.pi_star * ops.dof_matrix;
  CHECK((identity - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("degenerate polygon is rejected with the element id") {
  const std::vector<Vec2> collinear = {{0, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS(build_element_operators(collinear, 1.0, 1.0, 17));
  CHECK_THROWS(build_element_operators(unit_square, 0.0, 1.0));
}
