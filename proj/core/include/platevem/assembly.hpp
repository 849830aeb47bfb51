#pragma once

#include <Eigen/Sparse>

#include <vector>

#include "platevem/dof_map.hpp"
#include "platevem/element.hpp"
#include "platevem/geometry.hpp"

namespace platevem {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Assembled generalized eigenproblem A u = lambda B u on the free DoFs,
/// with the per-element operators kept for the error estimator.
struct GlobalSystem {
  SparseMatrix stiffness;  // A, symmetric, positive definite on free DoFs
  SparseMatrix mass;       // B, symmetric positive definite
  std::vector<ElementOperators> element_ops;
};

/// Scatters the stabilized element matrices through the DofMap. Constrained
/// rows/columns are eliminated (homogeneous conditions); simply supported
/// gradient pairs pass through their normal-direction weights.
GlobalSystem assemble(const Mesh& mesh, const DofMap& dof_map, double alpha_delta,
                      double alpha_0);

}  // namespace platevem
