#include "platevem/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "platevem/element.hpp"
#include "platevem/parallel.hpp"

namespace platevem {

std::vector<double> EstimatorBreakdown::eta2_per_element() const {
  std::vector<double> out(local.size());
  for (std::size_t i = 0; i < local.size(); ++i) out[i] = local[i].eta2;
  return out;
}

EstimatorBreakdown aggregate_estimates(std::vector<ElementEstimate> local) {
  EstimatorBreakdown out;
  std::vector<double> xi(local.size()), ju(local.size()), st(local.size());
  for (std::size_t i = 0; i < local.size(); ++i) {
    xi[i] = local[i].xi2;
    ju[i] = local[i].jump2;
    st[i] = local[i].stab2;
  }
  out.local = std::move(local);
  out.xi2 = pairwise_sum(xi);
  out.jump2 = pairwise_sum(ju);
  out.stab2 = pairwise_sum(st);
  out.eta2 = out.xi2 + out.jump2 + out.stab2;
  return out;
}

EstimatorBreakdown estimate_error(const Mesh& mesh, const std::vector<ElementOperators>& ops,
                                  const DofMap& dof_map, double lambda,
                                  const Eigen::VectorXd& u_free, double alpha_delta,
                                  double alpha_0) {
  const int np = mesh.num_polygons();
  if (static_cast<int>(ops.size()) != np)
    throw std::invalid_argument("estimate_error: element operator cache does not match the mesh");
  const Eigen::VectorXd u = dof_map.expand(u_free);

  // Projected Hessians (constant per element) and local DoF vectors.
  std::vector<Eigen::Matrix2d> hess(np);
  std::vector<Eigen::VectorXd> local_dofs(np);
  parallel_for(np, [&](int p) {
    const auto& poly = mesh.polygon(p);
    Eigen::VectorXd d(3 * poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i) d.segment<3>(3 * i) = u.segment<3>(3 * poly[i]);
    local_dofs[p] = std::move(d);
    hess[p] = projected_hessian(ops[p], local_dofs[p]);
  });

  std::vector<ElementEstimate> local(np);
  parallel_for(np, [&](int p) {
    const ElementOperators& el = ops[p];
    const Eigen::VectorXd& d = local_dofs[p];
    ElementEstimate est;

    // Volume term h_K^4 ||lambda Pi u||^2 through the exact monomial moments.
    const Eigen::VectorXd c = el.pi_star * d;
    const double h4 = std::pow(el.diameter, 4);
    est.xi2 = h4 * lambda * lambda * c.dot(el.moments * c);

    // Hessian-normal jumps over the interior edges of K.
    const ElementGeometry geom = element_geometry(mesh, p);
    const auto& edge_ids = mesh.polygon_edges()[p];
    for (std::size_t s = 0; s < edge_ids.size(); ++s) {
      const Edge& e = mesh.edges()[edge_ids[s]];
      if (e.is_boundary()) continue;
      const int q = e.other_polygon(p);
      const Vec2 g = (hess[p] - hess[q]) * geom.edge_normal[s];
      est.jump2 += geom.edge_length[s] * geom.edge_length[s] * g.squaredNorm();
    }

    est.stab2 = alpha_delta * d.dot(el.stab_stiffness * d) + alpha_0 * d.dot(el.stab_mass * d);
    est.eta2 = est.xi2 + est.jump2 + est.stab2;
    local[p] = est;
  });

  return aggregate_estimates(std::move(local));
}

std::vector<int> dorfler_mark(const std::vector<double>& eta2, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("dorfler_mark: delta must lie in [0,1]");
  const int n = static_cast<int>(eta2.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return eta2[a] != eta2[b] ? eta2[a] > eta2[b] : a < b;
  });
  // Total accumulated in the same order as the prefix, so the delta = 1 case
  // hits the bound exactly.
  double total = 0.0;
  for (int i : order) total += eta2[i];
  const double threshold = delta * total;

  std::vector<int> marked;
  double acc = 0.0;
  for (int i : order) {
    if (acc >= threshold) break;
    marked.push_back(i);
    acc += eta2[i];
  }
  std::sort(marked.begin(), marked.end());
  return marked;
}

std::optional<double> effectivity(double eta2, double lambda_h, double lambda_exact) {
  const double err = std::abs(lambda_h - lambda_exact);
  if (err < 1e-14 * std::abs(lambda_exact)) return std::nullopt;
  return eta2 / err;
}

std::vector<double> convergence_rates(const std::vector<double>& values,
                                      const std::vector<double>& dofs, int dim) {
  if (values.size() != dofs.size())
    throw std::invalid_argument("convergence_rates: size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !(dofs[i] > 0.0))
      throw std::invalid_argument("convergence_rates: inputs must be positive");
    if (i > 0 && !(dofs[i] > dofs[i - 1]))
      throw std::invalid_argument("convergence_rates: DoF counts must increase strictly");
  }
  std::vector<double> rates;
  for (std::size_t i = 0; i + 1 < values.size(); ++i)
    rates.push_back(-dim * std::log(values[i + 1] / values[i]) / std::log(dofs[i + 1] / dofs[i]));
  return rates;
}

}  // namespace platevem
