#include "platevem/dof_map.hpp"

#include <cmath>
#include <stdexcept>

namespace platevem {

Eigen::VectorXd DofMap::expand(const Eigen::VectorXd& free_values) const {
  if (free_values.size() != n_free)
    throw std::invalid_argument("DofMap::expand: free vector has wrong length");
  Eigen::VectorXd full = Eigen::VectorXd::Zero(total_dofs());
  for (int d = 0; d < total_dofs(); ++d)
    if (target[d] >= 0) full(d) = weight[d] * free_values(target[d]);
  return full;
}

DofMap DofMap::unconstrained(const Mesh& mesh) {
  DofMap map;
  map.n_vertices = mesh.num_vertices();
  map.n_free = map.total_dofs();
  map.target.resize(map.total_dofs());
  map.weight.assign(map.total_dofs(), 1.0);
  for (int d = 0; d < map.total_dofs(); ++d) map.target[d] = d;
  return map;
}

DofMap build_dof_map(const Mesh& mesh, BoundaryCondition bc) {
  const int nv = mesh.num_vertices();

  // Unit tangents of the boundary edges incident to each boundary vertex.
  std::vector<std::vector<Vec2>> tangents(nv);
  bool any_boundary = false;
  for (const Edge& e : mesh.edges()) {
    if (!e.is_boundary()) continue;
    any_boundary = true;
    const Vec2 t = (mesh.vertex(e.b) - mesh.vertex(e.a)).normalized();
    tangents[e.a].push_back(t);
    tangents[e.b].push_back(t);
  }
  if (!any_boundary) throw std::runtime_error("mesh has no boundary edges");

  DofMap map;
  map.n_vertices = nv;
  map.target.assign(3 * nv, -1);
  map.weight.assign(3 * nv, 0.0);

  int next = 0;
  for (int v = 0; v < nv; ++v) {
    if (!mesh.boundary_vertex()[v]) {
      for (int c = 0; c < 3; ++c) {
        map.target[3 * v + c] = next++;
        map.weight[3 * v + c] = 1.0;
      }
      continue;
    }
    if (bc == BoundaryCondition::Clamped) continue;  // all three constrained

    // Simply supported: value always constrained; the gradient keeps its
    // normal component only when every incident boundary tangent is parallel.
    const auto& ts = tangents[v];
    bool straight = ts.size() >= 2;
    for (std::size_t i = 1; i < ts.size() && straight; ++i)
      if (std::abs(ts[0].x() * ts[i].y() - ts[0].y() * ts[i].x()) > 1e-9) straight = false;
    if (!straight) {
      map.tangential.push_back({v, ts[0]});
      if (ts.size() >= 2) map.tangential.push_back({v, ts[1]});
      continue;  // corner: value and both gradient components constrained
    }
    const Vec2 t = ts[0];
    const Vec2 n(-t.y(), t.x());
    map.tangential.push_back({v, t});
    const int f = next++;
    map.target[3 * v + 1] = f;
    map.weight[3 * v + 1] = n.x();
    map.target[3 * v + 2] = f;
    map.weight[3 * v + 2] = n.y();
  }
  map.n_free = next;
  return map;
}

}  // namespace platevem
