#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <vector>

namespace platevem {

struct SolveOptions {
  /// Dense reduction below this free dimension; shift-invert iteration above.
  int dense_threshold = 3000;
  /// Relative residual target ||A u - lambda B u|| / (lambda ||B u||).
  double tolerance = 1e-9;
  int max_iterations = 200;
  /// Iteration block size; 0 means k + 3.
  int block_size = 0;
  std::uint64_t seed = 0x5eedULL;
};

/// Smallest eigenpairs of A u = lambda B u, ascending and B-orthonormal.
struct EigenSolution {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;    // one column per eigenpair
  Eigen::VectorXd residuals;  // relative residual norms
};

EigenSolution solve_eigen(const Eigen::SparseMatrix<double>& A,
                          const Eigen::SparseMatrix<double>& B, int k,
                          const SolveOptions& opts = {});

/// Replaces each eigenvalue by the mean of its near-degenerate cluster
/// (relative gap below `rel_tol`); used when comparing against references.
std::vector<double> cluster_representatives(const std::vector<double>& values,
                                            double rel_tol = 1e-6);

}  // namespace platevem
