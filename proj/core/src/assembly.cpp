#include "platevem/assembly.hpp"

#include <stdexcept>

#include "platevem/parallel.hpp"

namespace platevem {

GlobalSystem assemble(const Mesh& mesh, const DofMap& dof_map, double alpha_delta,
                      double alpha_0) {
  if (dof_map.n_vertices != mesh.num_vertices())
    throw std::invalid_argument("assemble: DofMap does not match the mesh");
  const int np = mesh.num_polygons();

  GlobalSystem sys;
  sys.element_ops.resize(np);
  parallel_for(np, [&](int p) {
    sys.element_ops[p] = build_element_operators(mesh, p, alpha_delta, alpha_0);
  });

  std::vector<Eigen::Triplet<double>> ta, tb;
  ta.reserve(static_cast<std::size_t>(np) * 144);
  tb.reserve(static_cast<std::size_t>(np) * 144);
  for (int p = 0; p < np; ++p) {
    const auto& poly = mesh.polygon(p);
    const ElementOperators& ops = sys.element_ops[p];
    const int nd = 3 * ops.num_vertices;

    // Local slot -> (free dof, weight); weight 0 marks constrained slots.
    std::vector<int> gid(nd);
    std::vector<double> gw(nd);
    for (int i = 0; i < ops.num_vertices; ++i)
      for (int c = 0; c < 3; ++c) {
        const int full = 3 * poly[i] + c;
        gid[3 * i + c] = dof_map.target[full];
        gw[3 * i + c] = dof_map.weight[full];
      }

    for (int i = 0; i < nd; ++i) {
      if (gid[i] < 0) continue;
      for (int j = 0; j < nd; ++j) {
        if (gid[j] < 0) continue;
        const double wij = gw[i] * gw[j];
        ta.emplace_back(gid[i], gid[j], wij * ops.stiffness(i, j));
        tb.emplace_back(gid[i], gid[j], wij * ops.mass(i, j));
      }
    }
  }

  sys.stiffness.resize(dof_map.n_free, dof_map.n_free);
  sys.mass.resize(dof_map.n_free, dof_map.n_free);
  sys.stiffness.setFromTriplets(ta.begin(), ta.end());
  sys.mass.setFromTriplets(tb.begin(), tb.end());
  sys.stiffness.makeCompressed();
  sys.mass.makeCompressed();
  return sys;
}

}  // namespace platevem
