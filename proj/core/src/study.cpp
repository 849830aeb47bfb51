#include "platevem/study.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "platevem/assembly.hpp"
#include "platevem/estimator.hpp"

namespace platevem {

namespace {

std::optional<double> step_rate(const std::optional<double>& prev, const std::optional<double>& cur,
                                int prev_dofs, int cur_dofs) {
  if (!prev || !cur || !(*prev > 0.0) || !(*cur > 0.0)) return std::nullopt;
  return -2.0 * std::log(*cur / *prev) / std::log(static_cast<double>(cur_dofs) / prev_dofs);
}

}  // namespace

StudyHistory run_study(const Mesh& initial, const StudyParams& params) {
  if (params.num_eigs < 1) throw std::invalid_argument("run_study: num_eigs must be >= 1");
  if (!(params.dorfler_delta >= 0.0 && params.dorfler_delta <= 1.0))
    throw std::invalid_argument("run_study: dorfler_delta must lie in [0,1]");
  if (params.max_steps < 0) throw std::invalid_argument("run_study: max_steps must be >= 0");

  StudyHistory history;
  history.num_eigs = params.num_eigs;

  Mesh mesh = initial;
  double tracked_lambda = 0.0;
  std::optional<double> prev_err, prev_eta2;
  int prev_dofs = 0;

  for (int step = 0;; ++step) {
    const DofMap dof_map = build_dof_map(mesh, params.bc);
    GlobalSystem sys;
    EigenSolution sol;
    try {
      sys = assemble(mesh, dof_map, params.alpha_delta, params.alpha_0);
      const int k = std::min(params.num_eigs, dof_map.n_free);
      if (k < 1) throw std::runtime_error("no free DoFs left after constraint elimination");
      sol = solve_eigen(sys.stiffness, sys.mass, k, params.solver);
    } catch (const std::exception& e) {
      throw std::runtime_error("study step " + std::to_string(step) + ": " + e.what());
    }

    StudyStep rec;
    rec.step = step;
    rec.ndofs = dof_map.n_free;
    rec.num_elements = mesh.num_polygons();
    for (int p = 0; p < mesh.num_polygons(); ++p)
      rec.hmax = std::max(rec.hmax, mesh.polygon_diameter(p));
    rec.lambdas.assign(sol.values.data(), sol.values.data() + sol.values.size());

    // Track by closeness to the previous value, not by index.
    int tracked = 0;
    if (step > 0) {
      double best = std::abs(rec.lambdas[0] - tracked_lambda);
      for (std::size_t i = 1; i < rec.lambdas.size(); ++i) {
        const double d = std::abs(rec.lambdas[i] - tracked_lambda);
        if (d < best) {
          best = d;
          tracked = static_cast<int>(i);
        }
      }
    }
    tracked_lambda = rec.lambdas[tracked];
    rec.tracked = tracked;

    const EstimatorBreakdown est =
        estimate_error(mesh, sys.element_ops, dof_map, rec.lambdas[tracked],
                       sol.vectors.col(tracked), params.alpha_delta, params.alpha_0);
    rec.eta2 = est.eta2;
    rec.xi2 = est.xi2;
    rec.jump2 = est.jump2;
    rec.stab2 = est.stab2;

    const std::vector<double> reps = cluster_representatives(rec.lambdas);
    rec.errors.resize(rec.lambdas.size());
    rec.effectivities.resize(rec.lambdas.size());
    for (std::size_t i = 0; i < rec.lambdas.size(); ++i) {
      if (i < params.exact_eigenvalues.size()) {
        rec.errors[i] = std::abs(reps[i] - params.exact_eigenvalues[i]);
        rec.effectivities[i] = effectivity(est.eta2, reps[i], params.exact_eigenvalues[i]);
      }
    }

    // Rates follow the tracked lineage: its error against the first reference.
    std::optional<double> cur_err;
    if (!params.exact_eigenvalues.empty())
      cur_err = std::abs(reps[tracked] - params.exact_eigenvalues.front());
    if (step > 0) {
      rec.rate_err = step_rate(prev_err, cur_err, prev_dofs, rec.ndofs);
      rec.rate_eta2 = step_rate(prev_eta2, rec.eta2, prev_dofs, rec.ndofs);
    }
    prev_err = cur_err;
    prev_eta2 = rec.eta2;
    prev_dofs = rec.ndofs;

    if (params.on_step) {
      const Eigen::VectorXd u_full = dof_map.expand(sol.vectors.col(tracked));
      params.on_step(step, mesh, u_full);
    }
    history.steps.push_back(std::move(rec));

    if (step == params.max_steps) break;

    std::vector<int> marked;
    if (params.adaptive) {
      marked = dorfler_mark(est.eta2_per_element(), params.dorfler_delta);
    } else {
      marked.resize(mesh.num_polygons());
      std::iota(marked.begin(), marked.end(), 0);
    }
    if (marked.empty()) break;

    Mesh next = refine(mesh, marked);
    if (build_dof_map(next, params.bc).n_free > params.max_dofs) break;
    mesh = std::move(next);
  }
  return history;
}

StudyHistory adaptive_loop(const Mesh& initial, BoundaryCondition bc, int num_eigs, double delta,
                           double alpha_delta, double alpha_0, int max_steps, int max_dofs) {
  StudyParams params;
  params.bc = bc;
  params.num_eigs = num_eigs;
  params.adaptive = true;
  params.dorfler_delta = delta;
  params.alpha_delta = alpha_delta;
  params.alpha_0 = alpha_0;
  params.max_steps = max_steps;
  params.max_dofs = max_dofs;
  return run_study(initial, params);
}

}  // namespace platevem
