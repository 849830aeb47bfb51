#pragma once

#include <Eigen/Dense>

#include <vector>

#include "platevem/geometry.hpp"

namespace platevem {

/// Boundary conditions of the plate problem. Clamped kills value and gradient
/// on the boundary; simply supported kills the value and every tangential
/// derivative (the normal derivative stays free on straight boundary runs).
enum class BoundaryCondition { Clamped, SimplySupported };

/// Tangential constraint t . grad(u) = 0 recorded at a boundary vertex.
struct TangentConstraint {
  int vertex = -1;
  Vec2 tangent = Vec2::Zero();
};

/// Global numbering of the 3 DoFs per vertex and the essential-constraint
/// elimination map. Every full DoF maps to at most one free DoF with a
/// weight; at simply supported vertices on straight boundary runs the two
/// gradient slots share one free DoF (the normal derivative), with weights
/// given by the unit normal.
struct DofMap {
  int n_vertices = 0;
  int n_free = 0;
  std::vector<int> target;     ///< size 3V; free index or -1 (constrained)
  std::vector<double> weight;  ///< size 3V
  std::vector<TangentConstraint> tangential;  ///< SSP bookkeeping

  int total_dofs() const { return 3 * n_vertices; }
  int n_constrained() const { return total_dofs() - n_free; }

  /// Re-expands a free-DoF vector to all 3V DoFs (constrained ones are zero).
  Eigen::VectorXd expand(const Eigen::VectorXd& free_values) const;

  /// Identity map with no constraints (single-element studies and tests).
  static DofMap unconstrained(const Mesh& mesh);
};

DofMap build_dof_map(const Mesh& mesh, BoundaryCondition bc);

}  // namespace platevem
