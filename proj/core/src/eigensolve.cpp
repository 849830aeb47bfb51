#include "platevem/eigensolve.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace platevem {

namespace {

Eigen::VectorXd relative_residuals(const Eigen::SparseMatrix<double>& A,
                                   const Eigen::SparseMatrix<double>& B,
                                   const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors) {
  Eigen::VectorXd out(values.size());
  for (int i = 0; i < values.size(); ++i) {
    const Eigen::VectorXd bu = B * vectors.col(i);
    const double num = (A * vectors.col(i) - values(i) * bu).norm();
    out(i) = num / (std::abs(values(i)) * bu.norm());
  }
  return out;
}

EigenSolution solve_dense(const Eigen::SparseMatrix<double>& A,
                          const Eigen::SparseMatrix<double>& B, int k) {
  const Eigen::MatrixXd Ad(A);
  const Eigen::MatrixXd Bd(B);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ad, Bd);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("dense generalized eigensolve failed (mass matrix not SPD?)");
  EigenSolution sol;
  sol.values = ges.eigenvalues().head(k);
  sol.vectors = ges.eigenvectors().leftCols(k);
  sol.residuals = relative_residuals(A, B, sol.values, sol.vectors);
  return sol;
}

// Shift-invert (shift 0) subspace iteration with Rayleigh-Ritz extraction.
// Each sweep applies A^{-1} B, B-orthonormalizes through a Cholesky of the
// B-Gram, and diagonalizes the projected operator; Ritz vectors come out
// B-orthonormal by construction.
EigenSolution solve_shift_invert(const Eigen::SparseMatrix<double>& A,
                                 const Eigen::SparseMatrix<double>& B, int k,
                                 const SolveOptions& opts) {
  const int n = A.rows();
  const int m = std::min(n, opts.block_size > 0 ? opts.block_size : k + 3);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> factor(A);
  if (factor.info() != Eigen::Success)
    throw std::runtime_error("sparse factorization of the stiffness matrix failed");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd X(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) X(i, j) = gauss(rng);

  Eigen::VectorXd theta;
  Eigen::MatrixXd AX, BX;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Eigen::MatrixXd Z = B * X;           // = A * Y after the solve
    const Eigen::MatrixXd Y = factor.solve(Z);

    Eigen::MatrixXd BY = B * Y;
    Eigen::MatrixXd gram = Y.transpose() * BY;
    gram = 0.5 * (gram + gram.transpose()).eval();
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
      gram.diagonal().array() += 1e-12 * gram.trace() / m;
      llt.compute(gram);
      if (llt.info() != Eigen::Success)
        throw std::runtime_error("subspace iteration lost rank at sweep " + std::to_string(iter));
    }
    // Whitened projection: S = L^{-1} (Y^T A Y) L^{-T} with A Y = Z.
    const Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd S = Y.transpose() * Z;
    S = 0.5 * (S + S.transpose()).eval();
    S = L.triangularView<Eigen::Lower>().solve(S);
    S = L.triangularView<Eigen::Lower>().solve(S.transpose()).transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("projected eigensolve failed at sweep " + std::to_string(iter));
    const Eigen::MatrixXd V =
        L.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());

    X = Y * V;
    AX = Z * V;
    BX = BY * V;
    theta = es.eigenvalues();

    double worst = 0.0;
    for (int i = 0; i < k; ++i) {
      const double res =
          (AX.col(i) - theta(i) * BX.col(i)).norm() / (std::abs(theta(i)) * BX.col(i).norm());
      worst = std::max(worst, res);
    }
    if (worst <= opts.tolerance) break;
    if (iter + 1 == opts.max_iterations)
      throw std::runtime_error("eigensolver did not converge within " +
                               std::to_string(opts.max_iterations) + " sweeps (residual " +
                               std::to_string(worst) + ")");
  }

  EigenSolution sol;
  sol.values = theta.head(k);
  sol.vectors = X.leftCols(k);
  sol.residuals.resize(k);
  for (int i = 0; i < k; ++i)
    sol.residuals(i) =
        (AX.col(i) - theta(i) * BX.col(i)).norm() / (std::abs(theta(i)) * BX.col(i).norm());
  return sol;
}

}  // namespace

EigenSolution solve_eigen(const Eigen::SparseMatrix<double>& A,
                          const Eigen::SparseMatrix<double>& B, int k, const SolveOptions& opts) {
  const int n = A.rows();
  if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
    throw std::invalid_argument("solve_eigen: matrix dimensions disagree");
  if (k < 1 || k > n)
    throw std::invalid_argument("solve_eigen: need 1 <= k <= " + std::to_string(n) + ", got " +
                                std::to_string(k));
  if (n <= opts.dense_threshold) return solve_dense(A, B, k);
  return solve_shift_invert(A, B, k, opts);
}

std::vector<double> cluster_representatives(const std::vector<double>& values, double rel_tol) {
  const int n = static_cast<int>(values.size());
  std::vector<double> reps(values);
  int lo = 0;
  while (lo < n) {
    int hi = lo;
    while (hi + 1 < n &&
           std::abs(values[hi + 1] - values[hi]) <=
               rel_tol * std::max(std::abs(values[hi]), std::abs(values[hi + 1])))
      ++hi;
    double mean = 0.0;
    for (int i = lo; i <= hi; ++i) mean += values[i];
    mean /= (hi - lo + 1);
    for (int i = lo; i <= hi; ++i) reps[i] = mean;
    lo = hi + 1;
  }
  return reps;
}

}  // namespace platevem
