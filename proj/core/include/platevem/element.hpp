#pragma once

#include <Eigen/Dense>

#include <vector>

#include "platevem/geometry.hpp"

namespace platevem {

/// Monomials [1, xi, eta, xi^2, xi*eta, eta^2] with xi = (x - x_c)/h_K and
/// eta = (y - y_c)/h_K. Values are dimensionless; gradients and Hessians are
/// returned in physical units.
struct ScaledMonomialBasis {
  Vec2 centroid = Vec2::Zero();
  double h = 1.0;

  static constexpr int size = 6;

  double value(int a, const Vec2& x) const;
  Vec2 gradient(int a, const Vec2& x) const;
  Eigen::Matrix2d hessian(int a) const;
};

/// Local operators of the lowest-order C1 virtual element on one polygon.
///
/// DoF layout: 3 per vertex, cycling with the polygon —
/// [v(V_i), dv/dx(V_i), dv/dy(V_i)]. `pi_star` maps DoF vectors to the scaled
/// monomial coefficients of the energy projection; `dof_matrix` holds the DoFs
/// of the monomials. `stab_stiffness`/`stab_mass` are the raw stabilization
/// blocks, without the alpha multipliers; `stiffness`/`mass` include them.
struct ElementOperators {
  int num_vertices = 0;
  ScaledMonomialBasis basis;
  double area = 0.0;
  double diameter = 0.0;

  Eigen::MatrixXd pi_star;         // 6 x 3N
  Eigen::MatrixXd dof_matrix;      // 3N x 6
  Eigen::MatrixXd stiffness;       // 3N x 3N, consistency + alpha_delta * stab
  Eigen::MatrixXd mass;            // 3N x 3N, consistency + alpha_0 * stab
  Eigen::MatrixXd stab_stiffness;  // 3N x 3N
  Eigen::MatrixXd stab_mass;       // 3N x 3N
  Eigen::Matrix<double, 6, 6> moments;  // \int_K m_a m_b
};

/// Builds the projector and the stabilized local matrices on a ccw ring.
/// Throws if the local projector system is singular (degenerate polygon);
/// `element_id` is used in diagnostics only.
ElementOperators build_element_operators(const std::vector<Vec2>& ring, double alpha_delta,
                                         double alpha_0, int element_id = -1);
ElementOperators build_element_operators(const Mesh& mesh, int p, double alpha_delta,
                                         double alpha_0);

/// Constant Hessian of the projected function, physical units.
Eigen::Matrix2d projected_hessian(const ElementOperators& ops, const Eigen::VectorXd& local_dofs);

}  // namespace platevem
