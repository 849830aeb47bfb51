#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <vector>

#include "platevem/dof_map.hpp"
#include "platevem/eigensolve.hpp"
#include "platevem/geometry.hpp"

namespace platevem {

struct StudyParams {
  BoundaryCondition bc = BoundaryCondition::Clamped;
  int num_eigs = 1;
  bool adaptive = false;  ///< false: refine every element each step
  double dorfler_delta = 0.5;
  double alpha_delta = 1.0;
  double alpha_0 = 1.0;
  int max_steps = 3;
  int max_dofs = 30000;
  std::vector<double> exact_eigenvalues;  ///< optional references, per index
  SolveOptions solver;
  /// Called once per recorded step with the mesh and the tracked eigenfunction
  /// expanded to all DoFs; used for snapshot export.
  std::function<void(int step, const Mesh& mesh, const Eigen::VectorXd& u_full)> on_step;
};

/// One SOLVE -> ESTIMATE record of a refinement study.
struct StudyStep {
  int step = 0;
  int ndofs = 0;  ///< free DoFs of the eigensolve
  int num_elements = 0;
  double hmax = 0.0;
  std::vector<double> lambdas;
  std::vector<std::optional<double>> errors;  ///< |cluster rep - exact|, per index
  double eta2 = 0.0, xi2 = 0.0, jump2 = 0.0, stab2 = 0.0;
  std::vector<std::optional<double>> effectivities;
  std::optional<double> rate_err;   ///< tracked-eigenvalue error rate vs previous step
  std::optional<double> rate_eta2;  ///< estimator rate vs previous step
  int tracked = 0;                  ///< index of the eigenpair driving the estimator
};

struct StudyHistory {
  int num_eigs = 1;
  std::vector<StudyStep> steps;
};

/// SOLVE -> ESTIMATE -> MARK -> REFINE driver. Records the initial mesh as
/// step 0 and stops after max_steps refinements or when the next mesh would
/// exceed max_dofs. The estimator is driven by the eigenpair closest in value
/// to the previous step's tracked eigenvalue, so mode crossings do not switch
/// the lineage.
StudyHistory run_study(const Mesh& initial, const StudyParams& params);

/// Adaptive study with Dorfler marking (convenience wrapper).
StudyHistory adaptive_loop(const Mesh& initial, BoundaryCondition bc, int num_eigs, double delta,
                           double alpha_delta, double alpha_0, int max_steps, int max_dofs);

}  // namespace platevem
