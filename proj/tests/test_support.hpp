#pragma once

// Shared helpers for the unit and acceptance suites: analytic DoF vectors,
// random convex polygon generation, and an independent Green-theorem oracle
// for polygon moments (used to cross-check the quadrature-based ones).

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "platevem/geometry.hpp"

namespace testsupport {

using platevem::Vec2;

struct ScalarField {
  std::function<double(const Vec2&)> value;
  std::function<Vec2(const Vec2&)> gradient;
};

inline ScalarField constant_field(double c) {
  return {[c](const Vec2&) { return c; }, [](const Vec2&) { return Vec2::Zero(); }};
}

inline ScalarField affine_field(double a, double bx, double by) {
  return {[=](const Vec2& p) { return a + bx * p.x() + by * p.y(); },
          [=](const Vec2&) { return Vec2(bx, by); }};
}

// q(x,y) = c0 + c1 x + c2 y + c3 x^2 + c4 x y + c5 y^2 in global coordinates.
inline ScalarField quadratic_field(const std::array<double, 6>& c) {
  return {[c](const Vec2& p) {
            return c[0] + c[1] * p.x() + c[2] * p.y() + c[3] * p.x() * p.x() +
                   c[4] * p.x() * p.y() + c[5] * p.y() * p.y();
          },
          [c](const Vec2& p) {
            return Vec2(c[1] + 2.0 * c[3] * p.x() + c[4] * p.y(),
                        c[2] + c[4] * p.x() + 2.0 * c[5] * p.y());
          }};
}

inline Eigen::VectorXd dof_vector(const std::vector<Vec2>& ring, const ScalarField& f) {
  Eigen::VectorXd d(3 * ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    d(3 * i) = f.value(ring[i]);
    const Vec2 g = f.gradient(ring[i]);
    d(3 * i + 1) = g.x();
    d(3 * i + 2) = g.y();
  }
  return d;
}

inline Eigen::VectorXd dof_vector(const platevem::Mesh& mesh, const ScalarField& f) {
  Eigen::VectorXd d(3 * mesh.num_vertices());
  for (int v = 0; v < mesh.num_vertices(); ++v) {
    d(3 * v) = f.value(mesh.vertex(v));
    const Vec2 g = f.gradient(mesh.vertex(v));
    d(3 * v + 1) = g.x();
    d(3 * v + 2) = g.y();
  }
  return d;
}

// Convex hull (counter-clockwise) of >= 5 random points, randomly scaled and
// shifted. Retries until the hull has at least 4 vertices.
inline std::vector<Vec2> random_convex_polygon(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    const int n = 5 + static_cast<int>(unit(rng) * 8);
    std::vector<Vec2> pts(n);
    for (Vec2& p : pts) p = Vec2(unit(rng), unit(rng));
    // Monotone-chain hull.
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
      return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
    });
    auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
      return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
    };
    std::vector<Vec2> hull(2 * pts.size());
    int k = 0;
    for (const Vec2& p : pts) {
      while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 1e-12) --k;
      hull[k++] = p;
    }
    const int lower = k + 1;
    for (int i = static_cast<int>(pts.size()) - 2; i >= 0; --i) {
      while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-12) --k;
      hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 4) continue;
    const double scale = 0.2 + 3.0 * unit(rng);
    const Vec2 shift(4.0 * unit(rng) - 2.0, 4.0 * unit(rng) - 2.0);
    for (Vec2& p : hull) p = shift + scale * p;
    return hull;
  }
}

// Exact integral of the scaled monomial product m_a * m_b over the polygon,
// via the divergence theorem: int_K xi^p eta^q dA reduces to edge integrals of
// degree p+q+1 <= 5, handled exactly by 5-point Gauss-Legendre.
inline double green_moment(const std::vector<Vec2>& ring, int p, int q, const Vec2& centroid,
                           double h) {
  static const double gx[5] = {-0.906179845938664, -0.538469310105683, 0.0, 0.538469310105683,
                               0.906179845938664};
  static const double gw[5] = {0.236926885056189, 0.478628670499366, 0.568888888888889,
                               0.478628670499366, 0.236926885056189};
  double integral = 0.0;
  const std::size_t n = ring.size();
  for (std::size_t e = 0; e < n; ++e) {
    const Vec2 a = (ring[e] - centroid) / h;
    const Vec2 b = (ring[(e + 1) % n] - centroid) / h;
    const Vec2 d = b - a;
    const double len = d.norm();
    const Vec2 normal(d.y() / len, -d.x() / len);
    for (int g = 0; g < 5; ++g) {
      const double u = 0.5 * (gx[g] + 1.0);
      const Vec2 x = a + u * d;
      const double F = std::pow(x.x(), p + 1) / (p + 1) * std::pow(x.y(), q);
      integral += 0.5 * gw[g] * len * F * normal.x();
    }
  }
  return integral * h * h;  // back to physical measure
}

inline int monomial_px(int a) {
  static constexpr std::array<int, 6> px = {0, 1, 0, 2, 1, 0};
  return px[a];
}
inline int monomial_py(int a) {
  static constexpr std::array<int, 6> py = {0, 0, 1, 0, 1, 2};
  return py[a];
}

}  // namespace testsupport
