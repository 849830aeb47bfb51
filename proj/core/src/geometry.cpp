#include "platevem/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace platevem {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::int64_t edge_key(int a, int b, int num_vertices) {
  if (a > b) std::swap(a, b);
  return static_cast<std::int64_t>(a) * num_vertices + b;
}

// True if segments [p1,p2] and [q1,q2] intersect (touching counts). A
// parametric formulation keeps nearly collinear hanging-node chains from
// producing spurious crossings: near-parallel segments only intersect when
// they genuinely overlap along a common line.
bool segments_intersect(const Vec2& p1, const Vec2& p2, const Vec2& q1, const Vec2& q2) {
  const Vec2 d1 = p2 - p1;
  const Vec2 d2 = q2 - q1;
  const Vec2 r = q1 - p1;
  const double len1 = d1.norm();
  const double len2 = d2.norm();
  const double denom = cross2(d1, d2);

  if (std::abs(denom) > 1e-9 * len1 * len2) {
    const double s = cross2(r, d2) / denom;
    const double t = cross2(r, d1) / denom;
    return s >= -1e-12 && s <= 1.0 + 1e-12 && t >= -1e-12 && t <= 1.0 + 1e-12;
  }

  // Near-parallel: reject offset lines, then test 1D overlap along d1.
  const double scale = std::max(len1, len2);
  const double dist_q1 = std::abs(cross2(d1, r)) / len1;
  const double dist_q2 = std::abs(cross2(d1, q2 - p1)) / len1;
  if (std::max(dist_q1, dist_q2) > 1e-11 * scale) return false;
  const double v0 = r.dot(d1) / len1;
  const double v1 = (q2 - p1).dot(d1) / len1;
  const double lo = std::max(0.0, std::min(v0, v1));
  const double hi = std::min(len1, std::max(v0, v1));
  return hi - lo > -1e-11 * scale;
}

void check_polygon_simple(const std::vector<Vec2>& verts, const std::vector<int>& poly, int p) {
  const int k = static_cast<int>(poly.size());
  for (int i = 0; i < k; ++i) {
    const Vec2& a1 = verts[poly[i]];
    const Vec2& a2 = verts[poly[(i + 1) % k]];
    // Adjacent side: no doubling back onto the previous edge.
    const Vec2 d1 = a2 - a1;
    const Vec2 d0 = a1 - verts[poly[(i + k - 1) % k]];
    if (std::abs(cross2(d0, d1)) <= 1e-14 * d0.norm() * d1.norm() && d0.dot(d1) < 0.0) {
      fail("polygon " + std::to_string(p) + " is not simple (reversed collinear edge at vertex " +
           std::to_string(poly[i]) + ")");
    }
    for (int j = i + 1; j < k; ++j) {
      // Skip side pairs sharing a vertex (consecutive, or first/last).
      if (j == i + 1 || (i == 0 && j == k - 1)) continue;
      const Vec2& b1 = verts[poly[j]];
      const Vec2& b2 = verts[poly[(j + 1) % k]];
      if (segments_intersect(a1, a2, b1, b2)) {
        fail("polygon " + std::to_string(p) + " is not simple (sides " + std::to_string(i) +
             " and " + std::to_string(j) + " intersect)");
      }
    }
  }
}

double signed_area_of(const std::vector<Vec2>& verts, const std::vector<int>& poly) {
  const Vec2 origin = verts[poly[0]];
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 u = verts[poly[i]] - origin;
    const Vec2 v = verts[poly[(i + 1) % poly.size()]] - origin;
    twice += cross2(u, v);
  }
  return 0.5 * twice;
}

Vec2 centroid_of(const std::vector<Vec2>& verts, const std::vector<int>& poly, double area) {
  const Vec2 origin = verts[poly[0]];
  Vec2 acc = Vec2::Zero();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 u = verts[poly[i]] - origin;
    const Vec2 v = verts[poly[(i + 1) % poly.size()]] - origin;
    acc += cross2(u, v) * (u + v);
  }
  return origin + acc / (6.0 * area);
}

}  // namespace

double pairwise_sum(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  std::vector<double> buf(values);
  std::size_t n = buf.size();
  while (n > 1) {
    const std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) buf[i] = buf[2 * i] + buf[2 * i + 1];
    if (n % 2 == 1) buf[half] = buf[n - 1];
    n = half + n % 2;
  }
  return buf[0];
}

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::vector<int>> polygons)
    : vertices_(std::move(vertices)), polygons_(std::move(polygons)) {
  const int nv = num_vertices();
  const int np = num_polygons();
  if (nv == 0 || np == 0) fail("mesh must contain at least one vertex and one polygon");

  std::vector<bool> used(nv, false);
  for (int p = 0; p < np; ++p) {
    const auto& poly = polygons_[p];
    if (poly.size() < 3)
      fail("polygon " + std::to_string(p) + " has fewer than 3 vertices");
    std::vector<int> sorted(poly);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("polygon " + std::to_string(p) + " repeats a vertex index");
    for (int v : poly) {
      if (v < 0 || v >= nv)
        fail("polygon " + std::to_string(p) + " references vertex " + std::to_string(v) +
             " outside [0," + std::to_string(nv - 1) + "]");
      used[v] = true;
    }
    if (signed_area_of(vertices_, poly) <= 0.0)
      fail("polygon " + std::to_string(p) + " is degenerate or not counter-clockwise");
    check_polygon_simple(vertices_, poly, p);
  }
  for (int v = 0; v < nv; ++v)
    if (!used[v]) fail("dangling vertex " + std::to_string(v) + " not referenced by any polygon");

  // Derive undirected edges; each directed side may appear only once.
  std::unordered_map<std::int64_t, int> edge_ids;
  std::unordered_map<std::int64_t, int> directed_seen;
  edge_ids.reserve(3 * static_cast<std::size_t>(np));
  polygon_edges_.resize(np);
  for (int p = 0; p < np; ++p) {
    const auto& poly = polygons_[p];
    const int k = static_cast<int>(poly.size());
    polygon_edges_[p].resize(k);
    for (int i = 0; i < k; ++i) {
      const int a = poly[i];
      const int b = poly[(i + 1) % k];
      const std::int64_t dkey = static_cast<std::int64_t>(a) * nv + b;
      if (!directed_seen.emplace(dkey, p).second)
        fail("edge (" + std::to_string(a) + "," + std::to_string(b) +
             ") traversed twice in the same direction (inconsistent orientation)");
      const std::int64_t key = edge_key(a, b, nv);
      auto it = edge_ids.find(key);
      if (it == edge_ids.end()) {
        Edge e;
        e.a = std::min(a, b);
        e.b = std::max(a, b);
        e.poly[0] = p;
        edge_ids.emplace(key, static_cast<int>(edges_.size()));
        polygon_edges_[p][i] = static_cast<int>(edges_.size());
        edges_.push_back(e);
      } else {
        Edge& e = edges_[it->second];
        if (e.poly[1] >= 0)
          fail("edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
               ") is shared by more than two polygons");
        e.poly[1] = p;
        polygon_edges_[p][i] = it->second;
      }
    }
  }

  boundary_vertex_.assign(nv, false);
  for (const Edge& e : edges_) {
    if (e.is_boundary()) {
      boundary_vertex_[e.a] = true;
      boundary_vertex_[e.b] = true;
    }
  }

  const long euler = static_cast<long>(nv) - static_cast<long>(edges_.size()) + np;
  if (euler != 1)
    fail("mesh violates the Euler relation V - E + F = 1 (got " + std::to_string(euler) +
         "); the domain must be simply connected and the polygons conforming");
}

double Mesh::polygon_area(int p) const { return signed_area_of(vertices_, polygons_[p]); }

Vec2 Mesh::polygon_centroid(int p) const {
  return centroid_of(vertices_, polygons_[p], polygon_area(p));
}

double Mesh::polygon_diameter(int p) const {
  const auto& poly = polygons_[p];
  double d2 = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j)
      d2 = std::max(d2, (vertices_[poly[i]] - vertices_[poly[j]]).squaredNorm());
  return std::sqrt(d2);
}

double Mesh::total_area() const {
  std::vector<double> areas(polygons_.size());
  for (int p = 0; p < num_polygons(); ++p) areas[p] = polygon_area(p);
  return pairwise_sum(areas);
}

double ring_signed_area(const std::vector<Vec2>& ring) {
  const Vec2 origin = ring[0];
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2 u = ring[i] - origin;
    const Vec2 v = ring[(i + 1) % ring.size()] - origin;
    twice += cross2(u, v);
  }
  return 0.5 * twice;
}

Vec2 ring_centroid(const std::vector<Vec2>& ring) {
  const double area = ring_signed_area(ring);
  const Vec2 origin = ring[0];
  Vec2 acc = Vec2::Zero();
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2 u = ring[i] - origin;
    const Vec2 v = ring[(i + 1) % ring.size()] - origin;
    acc += cross2(u, v) * (u + v);
  }
  return origin + acc / (6.0 * area);
}

ElementGeometry ring_geometry(const std::vector<Vec2>& ring) {
  ElementGeometry g;
  g.area = ring_signed_area(ring);
  if (g.area <= 0.0) fail("element ring is degenerate or not counter-clockwise");
  g.centroid = ring_centroid(ring);
  double d2 = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i)
    for (std::size_t j = i + 1; j < ring.size(); ++j)
      d2 = std::max(d2, (ring[i] - ring[j]).squaredNorm());
  g.diameter = std::sqrt(d2);
  g.edge_length.resize(ring.size());
  g.edge_normal.resize(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec2 d = ring[(i + 1) % ring.size()] - ring[i];
    const double len = d.norm();
    if (len <= 0.0) fail("element ring has a zero-length edge");
    g.edge_length[i] = len;
    g.edge_normal[i] = Vec2(d.y(), -d.x()) / len;  // outward for ccw rings
  }
  return g;
}

ElementGeometry element_geometry(const Mesh& mesh, int p) {
  const auto& poly = mesh.polygon(p);
  std::vector<Vec2> ring(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) ring[i] = mesh.vertex(poly[i]);
  return ring_geometry(ring);
}

Mesh generate_structured(StructuredKind kind, int n) {
  if (n < 1) fail("structured mesh subdivision must be >= 1");
  switch (kind) {
    case StructuredKind::Square: {
      std::vector<Vec2> verts;
      verts.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
          verts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
      auto id = [n](int i, int j) { return j * (n + 1) + i; };
      std::vector<std::vector<int>> polys;
      polys.reserve(static_cast<std::size_t>(n) * n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          polys.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      return Mesh(std::move(verts), std::move(polys));
    }
    case StructuredKind::Crossed: {
      std::vector<Vec2> verts;
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
          verts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
      const int grid = (n + 1) * (n + 1);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
          verts.emplace_back((i + 0.5) / n, (j + 0.5) / n);
      auto id = [n](int i, int j) { return j * (n + 1) + i; };
      auto cid = [n, grid](int i, int j) { return grid + j * n + i; };
      std::vector<std::vector<int>> polys;
      polys.reserve(static_cast<std::size_t>(4) * n * n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          const int bl = id(i, j), br = id(i + 1, j), tr = id(i + 1, j + 1), tl = id(i, j + 1);
          const int c = cid(i, j);
          polys.push_back({bl, br, c});
          polys.push_back({br, tr, c});
          polys.push_back({tr, tl, c});
          polys.push_back({tl, bl, c});
        }
      return Mesh(std::move(verts), std::move(polys));
    }
    case StructuredKind::Lshape: {
      if (n % 2 != 0) fail("L-shaped mesh requires an even subdivision count");
      std::vector<Vec2> grid_verts;
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
          grid_verts.emplace_back(static_cast<double>(i) / n, static_cast<double>(j) / n);
      auto id = [n](int i, int j) { return j * (n + 1) + i; };
      std::vector<std::vector<int>> cells;
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
          if (i >= n / 2 && j >= n / 2) continue;  // cut (1/2,1)^2
          cells.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
        }
      // Compact away unused grid vertices.
      std::vector<int> remap(grid_verts.size(), -1);
      std::vector<Vec2> verts;
      for (auto& cell : cells)
        for (int& v : cell) {
          if (remap[v] < 0) {
            remap[v] = static_cast<int>(verts.size());
            verts.push_back(grid_verts[v]);
          }
          v = remap[v];
        }
      return Mesh(std::move(verts), std::move(cells));
    }
  }
  fail("unknown structured mesh kind");
}

namespace {

// Sutherland-Hodgman clip of a ccw ring against the half-plane
// (x - point) . dir <= 0.
std::vector<Vec2> clip_half_plane(const std::vector<Vec2>& ring, const Vec2& point,
                                  const Vec2& dir) {
  std::vector<Vec2> out;
  out.reserve(ring.size() + 2);
  const std::size_t k = ring.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vec2& cur = ring[i];
    const Vec2& nxt = ring[(i + 1) % k];
    const double sc = (cur - point).dot(dir);
    const double sn = (nxt - point).dot(dir);
    if (sc <= 0.0) {
      out.push_back(cur);
      if (sn > 0.0) out.push_back(cur + (nxt - cur) * (sc / (sc - sn)));
    } else if (sn <= 0.0) {
      out.push_back(cur + (nxt - cur) * (sc / (sc - sn)));
    }
  }
  return out;
}

std::vector<Vec2> voronoi_cell(const std::vector<Vec2>& seeds, int i,
                               const std::vector<int>& by_distance) {
  std::vector<Vec2> cell = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
  double r_max = 2.0;  // diag of the unit square bounds any cell radius
  for (int j : by_distance) {
    if (j == i) continue;
    const double dist = (seeds[j] - seeds[i]).norm();
    if (dist > 2.0 * r_max) break;  // bisector cannot cut the current cell
    cell = clip_half_plane(cell, 0.5 * (seeds[i] + seeds[j]), seeds[j] - seeds[i]);
    if (cell.size() < 3) fail("voronoi cell " + std::to_string(i) + " collapsed");
    r_max = 0.0;
    for (const Vec2& v : cell) r_max = std::max(r_max, (v - seeds[i]).norm());
  }
  return cell;
}

// Merges nearly coincident points (radius `tol`) into shared mesh vertices.
class VertexMerger {
 public:
  explicit VertexMerger(double tol) : tol_(tol) {}

  int insert(const Vec2& p, std::vector<Vec2>& verts) {
    const long ix = std::lround(std::floor(p.x() / tol_));
    const long iy = std::lround(std::floor(p.y() / tol_));
    for (long dx = -1; dx <= 1; ++dx)
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find(key(ix + dx, iy + dy));
        if (it == grid_.end()) continue;
        for (int id : it->second)
          if ((verts[id] - p).norm() <= tol_) return id;
      }
    const int id = static_cast<int>(verts.size());
    verts.push_back(p);
    grid_[key(ix, iy)].push_back(id);
    return id;
  }

 private:
  static std::int64_t key(long ix, long iy) {
    return (static_cast<std::int64_t>(ix) << 32) ^ (static_cast<std::int64_t>(iy) & 0xffffffff);
  }
  double tol_;
  std::unordered_map<std::int64_t, std::vector<int>> grid_;
};

}  // namespace

Mesh generate_voronoi(std::vector<Vec2> seeds, int lloyd_iters) {
  const int n = static_cast<int>(seeds.size());
  if (n < 1) fail("voronoi generation requires at least one seed");
  if (lloyd_iters < 0) fail("lloyd iteration count must be >= 0");
  for (int i = 0; i < n; ++i) {
    if (!(seeds[i].x() >= 0.0 && seeds[i].x() <= 1.0 && seeds[i].y() >= 0.0 &&
          seeds[i].y() <= 1.0))
      fail("voronoi seed " + std::to_string(i) + " lies outside the unit square");
    for (int j = i + 1; j < n; ++j)
      if ((seeds[i] - seeds[j]).norm() < 1e-12)
        fail("voronoi seeds " + std::to_string(i) + " and " + std::to_string(j) +
             " coincide");
  }

  std::vector<int> order(n);
  std::vector<std::vector<Vec2>> cells(n);
  for (int pass = 0; pass <= lloyd_iters; ++pass) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) order[j] = j;
      const Vec2 si = seeds[i];
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = (seeds[a] - si).squaredNorm();
        const double db = (seeds[b] - si).squaredNorm();
        return da != db ? da < db : a < b;
      });
      cells[i] = voronoi_cell(seeds, i, order);
    }
    if (pass < lloyd_iters)
      for (int i = 0; i < n; ++i) seeds[i] = ring_centroid(cells[i]);
  }

  std::vector<Vec2> verts;
  std::vector<std::vector<int>> polys(n);
  VertexMerger merger(1e-9);
  for (int i = 0; i < n; ++i) {
    std::vector<int> ring;
    for (const Vec2& p : cells[i]) {
      const int id = merger.insert(p, verts);
      if (ring.empty() || ring.back() != id) ring.push_back(id);
    }
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
    if (ring.size() < 3) fail("voronoi cell " + std::to_string(i) + " degenerated after merging");
    polys[i] = std::move(ring);
  }
  return Mesh(std::move(verts), std::move(polys));
}

Mesh generate_voronoi(int n_seeds, int lloyd_iters, std::uint64_t rng_seed) {
  if (n_seeds < 1) fail("voronoi generation requires at least one seed");
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec2> seeds(n_seeds);
  for (Vec2& s : seeds) {
    const double x = unit(rng);
    const double y = unit(rng);
    s = Vec2(x, y);
  }
  return generate_voronoi(std::move(seeds), lloyd_iters);
}

Mesh read_mesh(std::istream& in, const std::string& context) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  // Strip '#' comments.
  std::string clean;
  clean.reserve(text.size());
  bool comment = false;
  for (char c : text) {
    if (c == '#') comment = true;
    if (c == '\n') comment = false;
    clean.push_back(comment ? ' ' : c);
  }
  std::istringstream ts(clean);
  long nv = 0, np = 0;
  if (!(ts >> nv >> np) || nv < 1 || np < 1)
    fail("mesh file " + context + ": malformed header (expected \"NV NP\")");
  std::vector<Vec2> verts(static_cast<std::size_t>(nv));
  for (long v = 0; v < nv; ++v)
    if (!(ts >> verts[v].x() >> verts[v].y()))
      fail("mesh file " + context + ": malformed vertex " + std::to_string(v));
  std::vector<std::vector<int>> polys(static_cast<std::size_t>(np));
  for (long p = 0; p < np; ++p) {
    long k = 0;
    if (!(ts >> k) || k < 3)
      fail("mesh file " + context + ": malformed polygon " + std::to_string(p));
    polys[p].resize(static_cast<std::size_t>(k));
    for (long i = 0; i < k; ++i)
      if (!(ts >> polys[p][i]))
        fail("mesh file " + context + ": malformed polygon " + std::to_string(p));
  }
  double extra;
  if (ts >> extra) fail("mesh file " + context + ": trailing data after last polygon");
  try {
    return Mesh(std::move(verts), std::move(polys));
  } catch (const std::exception& e) {
    fail("mesh file " + context + ": " + e.what());
  }
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open mesh file " + path);
  return read_mesh(in, path);
}

void write_mesh(const Mesh& mesh, std::ostream& out) {
  out << mesh.num_vertices() << ' ' << mesh.num_polygons() << '\n';
  char buf[64];
  for (const Vec2& v : mesh.vertices()) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x(), v.y());
    out << buf;
  }
  for (const auto& poly : mesh.polygons()) {
    out << poly.size();
    for (int v : poly) out << ' ' << v;
    out << '\n';
  }
}

void save_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail("cannot open " + path + " for writing");
  write_mesh(mesh, out);
  if (!out) fail("failed writing mesh to " + path);
}

Mesh refine(const Mesh& mesh, const std::vector<int>& marked) {
  const int np = mesh.num_polygons();
  std::vector<bool> is_marked(np, false);
  for (int p : marked) {
    if (p < 0 || p >= np) fail("refine: marked polygon " + std::to_string(p) + " out of range");
    is_marked[p] = true;
  }

  std::vector<Vec2> verts = mesh.vertices();
  std::unordered_map<std::int64_t, int> midpoint;  // split edge -> new vertex

  auto midpoint_id = [&](int a, int b) -> int {
    const std::int64_t key = edge_key(a, b, mesh.num_vertices());
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(verts.size());
    verts.push_back(0.5 * (mesh.vertex(a) + mesh.vertex(b)));
    midpoint.emplace(key, id);
    return id;
  };

  // First create all split-edge midpoints so unmarked neighbors can find them.
  for (int p = 0; p < np; ++p) {
    if (!is_marked[p]) continue;
    const auto& poly = mesh.polygon(p);
    for (std::size_t i = 0; i < poly.size(); ++i)
      midpoint_id(poly[i], poly[(i + 1) % poly.size()]);
  }

  std::vector<std::vector<int>> out_polys;
  out_polys.reserve(static_cast<std::size_t>(np) * 2);
  for (int p = 0; p < np; ++p) {
    const auto& poly = mesh.polygon(p);
    const int k = static_cast<int>(poly.size());
    if (is_marked[p]) {
      const int bary = static_cast<int>(verts.size());
      verts.push_back(mesh.polygon_centroid(p));
      for (int i = 0; i < k; ++i) {
        const int prev = poly[(i + k - 1) % k];
        const int cur = poly[i];
        const int next = poly[(i + 1) % k];
        out_polys.push_back({cur, midpoint_id(cur, next), bary, midpoint_id(prev, cur)});
      }
    } else {
      std::vector<int> ring;
      ring.reserve(poly.size() * 2);
      for (int i = 0; i < k; ++i) {
        ring.push_back(poly[i]);
        const auto it = midpoint.find(edge_key(poly[i], poly[(i + 1) % k], mesh.num_vertices()));
        if (it != midpoint.end()) ring.push_back(it->second);  // absorb hanging node
      }
      out_polys.push_back(std::move(ring));
    }
  }
  return Mesh(std::move(verts), std::move(out_polys));
}

QualityReport quality_report(const Mesh& mesh) {
  QualityReport report;
  report.min_edge_ratio = std::numeric_limits<double>::infinity();
  report.star_shaped.resize(mesh.num_polygons());
  for (int p = 0; p < mesh.num_polygons(); ++p) {
    const auto& poly = mesh.polygon(p);
    const double h = mesh.polygon_diameter(p);
    const Vec2 c = mesh.polygon_centroid(p);
    bool star = true;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Vec2& a = mesh.vertex(poly[i]);
      const Vec2& b = mesh.vertex(poly[(i + 1) % poly.size()]);
      const double len = (b - a).norm();
      report.min_edge_ratio = std::min(report.min_edge_ratio, len / h);
      // Signed distance of the centroid from the edge line; positive inside.
      if (cross2(b - a, c - a) / len <= 1e-12 * h) star = false;
    }
    report.star_shaped[p] = star;
  }
  return report;
}

bool QualityReport::all_star_shaped() const {
  return std::all_of(star_shaped.begin(), star_shaped.end(), [](bool b) { return b; });
}

}  // namespace platevem
