#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "platevem/assembly.hpp"
#include "platevem/dof_map.hpp"
#include "platevem/geometry.hpp"

namespace platevem {

/// Squared estimator pieces of one element: volume term, sum of the Hessian
/// jumps over its interior edges, stabilization energy, and their sum.
struct ElementEstimate {
  double xi2 = 0.0;
  double jump2 = 0.0;
  double stab2 = 0.0;
  double eta2 = 0.0;
};

struct EstimatorBreakdown {
  std::vector<ElementEstimate> local;
  double xi2 = 0.0;
  double jump2 = 0.0;
  double stab2 = 0.0;
  double eta2 = 0.0;

  std::vector<double> eta2_per_element() const;
};

/// Residual a posteriori estimator for the eigenpair (lambda_h, u_free).
/// The free-DoF vector is re-expanded to all DoFs (constrained ones zero)
/// before evaluation; interior edges contribute a jump to both neighbors.
EstimatorBreakdown estimate_error(const Mesh& mesh, const std::vector<ElementOperators>& ops,
                                  const DofMap& dof_map, double lambda,
                                  const Eigen::VectorXd& u_free, double alpha_delta,
                                  double alpha_0);

/// Component-wise sums of per-element estimates (pairwise summation).
EstimatorBreakdown aggregate_estimates(std::vector<ElementEstimate> local);

/// Greedy minimal Dorfler/bulk marking: smallest descending-sorted prefix M
/// with delta * sum(eta2) <= sum_{K in M} eta2_K. Ties break on the lower
/// element index.
std::vector<int> dorfler_mark(const std::vector<double>& eta2, double delta);

/// eff = eta2 / |lambda_h - lambda_exact|; empty when the error underflows.
std::optional<double> effectivity(double eta2, double lambda_h, double lambda_exact);

/// Experimental order of convergence against DoF counts:
/// r_{j+1} = -d log(v_{j+1}/v_j) / log(N_{j+1}/N_j).
std::vector<double> convergence_rates(const std::vector<double>& values,
                                      const std::vector<double>& dofs, int dim = 2);

}  // namespace platevem
