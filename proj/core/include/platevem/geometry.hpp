#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace platevem {

using Vec2 = Eigen::Vector2d;

/// Undirected mesh edge with its incident polygons.
struct Edge {
  int a = -1;  ///< vertex ids, a < b
  int b = -1;
  int poly[2] = {-1, -1};  ///< incident polygons; poly[1] == -1 on the boundary

  bool is_boundary() const { return poly[1] < 0; }
  int other_polygon(int p) const { return poly[0] == p ? poly[1] : poly[0]; }
};

/// Immutable polygonal mesh of a simply-connected planar domain.
///
/// Construction validates the full invariant set: counter-clockwise simple
/// polygons, edge incidence 1 (boundary) or 2 (interior), no dangling
/// vertices, and the Euler relation V - E + F = 1. Edges and boundary flags
/// are always derived, never taken as input.
class Mesh {
 public:
  Mesh(std::vector<Vec2> vertices, std::vector<std::vector<int>> polygons);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_polygons() const { return static_cast<int>(polygons_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::vector<int>>& polygons() const { return polygons_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<bool>& boundary_vertex() const { return boundary_vertex_; }

  /// Edge ids per polygon, entry s matching the side (v_s, v_{s+1}).
  const std::vector<std::vector<int>>& polygon_edges() const { return polygon_edges_; }

  const Vec2& vertex(int v) const { return vertices_[v]; }
  const std::vector<int>& polygon(int p) const { return polygons_[p]; }

  double polygon_area(int p) const;
  Vec2 polygon_centroid(int p) const;
  double polygon_diameter(int p) const;

  /// Sum of all polygon areas (pairwise summation).
  double total_area() const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<std::vector<int>> polygons_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> polygon_edges_;
  std::vector<bool> boundary_vertex_;
};

/// Per-element geometric data consumed by the local VEM operators.
struct ElementGeometry {
  double diameter = 0.0;  ///< h_K, max pairwise vertex distance
  double area = 0.0;
  Vec2 centroid = Vec2::Zero();
  std::vector<double> edge_length;  ///< per side, h_l
  std::vector<Vec2> edge_normal;    ///< per side, outward unit normal
};

ElementGeometry ring_geometry(const std::vector<Vec2>& ring);
ElementGeometry element_geometry(const Mesh& mesh, int p);

/// Signed polygon area (positive for counter-clockwise rings).
double ring_signed_area(const std::vector<Vec2>& ring);
Vec2 ring_centroid(const std::vector<Vec2>& ring);

enum class StructuredKind { Square, Crossed, Lshape };

/// Structured meshes of the unit square / L-shaped domain.
///  - Square: n x n quadrilaterals of (0,1)^2
///  - Crossed: each of the n x n cells split into 4 triangles through its center
///  - Lshape: (0,1)^2 \ (1/2,1)^2 tiled by n/2-resolution quads (n must be even)
Mesh generate_structured(StructuredKind kind, int n);

/// Clipped Voronoi mesh of the unit square after `lloyd_iters` centroid
/// relaxations. Deterministic for a fixed seed.
Mesh generate_voronoi(int n_seeds, int lloyd_iters, std::uint64_t rng_seed);
Mesh generate_voronoi(std::vector<Vec2> seeds, int lloyd_iters);

/// Text format (see README): "NV NP", NV lines "x y", NP lines "k i0 ... i_{k-1}".
Mesh load_mesh(const std::string& path);
Mesh read_mesh(std::istream& in, const std::string& context = "<stream>");
void save_mesh(const Mesh& mesh, const std::string& path);
void write_mesh(const Mesh& mesh, std::ostream& out);

/// Midpoint-to-barycenter refinement: every marked N-gon becomes N
/// quadrilaterals (vertex, edge midpoint, barycenter, edge midpoint); unmarked
/// neighbors absorb the split-edge midpoints as genuine polygon vertices.
Mesh refine(const Mesh& mesh, const std::vector<int>& marked);

/// Mesh-regularity report for the shape assumptions: minimum edge/diameter
/// ratio and per-polygon star-shapedness with respect to the centroid.
struct QualityReport {
  double min_edge_ratio = 0.0;
  std::vector<bool> star_shaped;

  bool all_star_shaped() const;
};

QualityReport quality_report(const Mesh& mesh);

/// Numerically stable sum of a vector of doubles (pairwise reduction).
double pairwise_sum(const std::vector<double>& values);

}  // namespace platevem
