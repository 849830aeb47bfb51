#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "platevem/geometry.hpp"
#include "test_support.hpp"

using namespace platevem;

namespace {

long euler_characteristic(const Mesh& m) {
  return static_cast<long>(m.num_vertices()) - m.num_edges() + m.num_polygons();
}

int count_boundary_vertices(const Mesh& m) {
  return static_cast<int>(std::count(m.boundary_vertex().begin(), m.boundary_vertex().end(), true));
}

}  // namespace

TEST_CASE("structured square mesh") {
  const Mesh m = generate_structured(StructuredKind::Square, 2);
  CHECK(m.num_polygons() == 4);
  CHECK(m.num_vertices() == 9);
  CHECK(m.num_edges() == 12);
  CHECK(euler_characteristic(m) == 1);
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(count_boundary_vertices(m) == 8);
}

TEST_CASE("structured crossed mesh") {
  const Mesh m = generate_structured(StructuredKind::Crossed, 1);
  CHECK(m.num_polygons() == 4);
  CHECK(m.num_vertices() == 5);
  CHECK(m.num_edges() == 8);
  CHECK(m.total_area() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("structured L-shaped mesh") {
  const Mesh m = generate_structured(StructuredKind::Lshape, 2);
  CHECK(m.num_polygons() == 3);
  CHECK(m.total_area() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK_THROWS(generate_structured(StructuredKind::Lshape, 3));  // odd
  CHECK_THROWS(generate_structured(StructuredKind::Square, 0));
}

TEST_CASE("mesh constructor rejects invalid input") {
  std::vector<Vec2> quad = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK_THROWS_WITH_AS(Mesh(quad, {{0, 1, 2, 7}}), doctest::Contains("polygon 0"),
                       std::runtime_error);
  // clockwise
  CHECK_THROWS(Mesh(quad, {{0, 3, 2, 1}}));
  // bow tie
  std::vector<Vec2> bow = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  CHECK_THROWS(Mesh(bow, {{0, 1, 2, 3}}));
  // dangling vertex
  std::vector<Vec2> extra = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {5, 5}};
  CHECK_THROWS_WITH_AS(Mesh(extra, {{0, 1, 2, 3}}), doctest::Contains("dangling vertex 4"),
                       std::runtime_error);
}

TEST_CASE("edge incidence is one or two everywhere") {
  for (const Mesh& m : {generate_structured(StructuredKind::Square, 3),
                        generate_structured(StructuredKind::Crossed, 2),
                        generate_structured(StructuredKind::Lshape, 4),
                        generate_voronoi(25, 2, 7)}) {
    for (const Edge& e : m.edges()) {
      CHECK(e.poly[0] >= 0);
      if (!e.is_boundary()) CHECK(e.poly[1] != e.poly[0]);
    }
    CHECK(euler_characteristic(m) == 1);
  }
}

TEST_CASE("refine single square into four quads") {
  std::vector<Vec2> quad = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Mesh m(quad, {{0, 1, 2, 3}});
  const Mesh r = refine(m, {0});
  CHECK(r.num_polygons() == 4);
  CHECK(r.num_vertices() == 9);
  CHECK(r.total_area() == doctest::Approx(1.0).epsilon(1e-14));
  // all children meet at the barycenter (1/2, 1/2)
  int center = -1;
  for (int v = 0; v < r.num_vertices(); ++v)
    if ((r.vertex(v) - Vec2(0.5, 0.5)).norm() < 1e-15) center = v;
  REQUIRE(center >= 0);
  for (int p = 0; p < 4; ++p)
    CHECK(std::count(r.polygon(p).begin(), r.polygon(p).end(), center) == 1);
}

TEST_CASE("refine triangle into three quads") {
  std::vector<Vec2> tri = {{0, 0}, {1, 0}, {0, 1}};
  const Mesh m(tri, {{0, 1, 2}});
  const Mesh r = refine(m, {0});
  CHECK(r.num_polygons() == 3);
  for (int p = 0; p < 3; ++p) CHECK(r.polygon(p).size() == 4);
  CHECK(r.total_area() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("refine absorbs the hanging node into the unmarked neighbor") {
  // two unit squares side by side; refine the left one
  std::vector<Vec2> verts = {{0, 0}, {1, 0}, {2, 0}, {2, 1}, {1, 1}, {0, 1}};
  const Mesh m(verts, {{0, 1, 4, 5}, {1, 2, 3, 4}});
  const Mesh r = refine(m, {0});
  REQUIRE(r.num_polygons() == 5);
  // hand-constructed incidence: 4 quads + 1 pentagon holding (1, 1/2)
  int pentagon = -1;
  for (int p = 0; p < r.num_polygons(); ++p)
    if (r.polygon(p).size() == 5) pentagon = p;
  REQUIRE(pentagon >= 0);
  bool has_midpoint = false;
  for (int v : r.polygon(pentagon))
    if ((r.vertex(v) - Vec2(1.0, 0.5)).norm() < 1e-15) has_midpoint = true;
  CHECK(has_midpoint);
  CHECK(r.num_vertices() == 6 + 4 + 1);
  CHECK(r.total_area() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(euler_characteristic(r) == 1);
}

TEST_CASE("refinement conserves area and the Euler relation") {
  std::mt19937_64 rng(42);
  for (Mesh m : {generate_structured(StructuredKind::Square, 3),
                 generate_structured(StructuredKind::Crossed, 2),
                 generate_structured(StructuredKind::Lshape, 4),
                 generate_voronoi(30, 1, 3)}) {
    const double area = m.total_area();
    for (int round = 0; round < 3; ++round) {
      std::vector<int> marked;
      for (int p = 0; p < m.num_polygons(); ++p)
        if (rng() % 3 == 0) marked.push_back(p);
      if (marked.empty()) marked.push_back(0);
      m = refine(m, marked);
      CHECK(m.total_area() == doctest::Approx(area).epsilon(1e-12));
      CHECK(euler_characteristic(m) == 1);
      for (const Edge& e : m.edges()) CHECK(e.poly[0] >= 0);
    }
  }
}

TEST_CASE("refine everything keeps convex meshes star-shaped") {
  Mesh m = generate_voronoi(16, 2, 11);
  for (int round = 0; round < 2; ++round) {
    std::vector<int> all(m.num_polygons());
    std::iota(all.begin(), all.end(), 0);
    m = refine(m, all);
    CHECK(quality_report(m).all_star_shaped());
  }
}

TEST_CASE("quality report geometry") {
  std::vector<Vec2> quad = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Mesh square(quad, {{0, 1, 2, 3}});
  const QualityReport qr = quality_report(square);
  CHECK(qr.min_edge_ratio == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(qr.all_star_shaped());

  std::vector<Vec2> sliver = {{0, 0}, {1, 0}, {1, 0.01}, {0, 0.01}};
  const Mesh thin(sliver, {{0, 1, 2, 3}});
  CHECK(quality_report(thin).min_edge_ratio == doctest::Approx(0.01).epsilon(1e-3));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 25; ++i) {
    const auto ring = testsupport::random_convex_polygon(rng);
    const Mesh m(ring, {[&] {
                   std::vector<int> ids(ring.size());
                   std::iota(ids.begin(), ids.end(), 0);
                   return ids;
                 }()});
    CHECK(quality_report(m).all_star_shaped());
  }
}

TEST_CASE("voronoi generator basics") {
  const Mesh one = generate_voronoi(std::vector<Vec2>{{0.4, 0.6}}, 0);
  CHECK(one.num_polygons() == 1);
  CHECK(one.num_vertices() == 4);
  CHECK(one.total_area() == doctest::Approx(1.0).epsilon(1e-14));

  const std::vector<Vec2> four = {{0.25, 0.25}, {0.75, 0.25}, {0.25, 0.75}, {0.75, 0.75}};
  const Mesh symmetric = generate_voronoi(four, 0);
  CHECK(symmetric.num_polygons() == 4);
  for (int p = 0; p < 4; ++p)
    CHECK(symmetric.polygon_area(p) == doctest::Approx(0.25).epsilon(1e-12));

  const Mesh big = generate_voronoi(64, 3, 20240601);
  CHECK(big.num_polygons() == 64);
  CHECK(big.total_area() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(euler_characteristic(big) == 1);

  CHECK_THROWS(generate_voronoi(std::vector<Vec2>{{0.5, 0.5}, {0.5, 0.5}}, 0));
}

TEST_CASE("voronoi is deterministic for a fixed seed") {
  const Mesh a = generate_voronoi(40, 2, 99);
  const Mesh b = generate_voronoi(40, 2, 99);
  REQUIRE(a.num_vertices() == b.num_vertices());
  for (int v = 0; v < a.num_vertices(); ++v) CHECK(a.vertex(v) == b.vertex(v));
}

TEST_CASE("mesh file round trip") {
  const Mesh m = generate_structured(StructuredKind::Square, 2);
  std::ostringstream first;
  write_mesh(m, first);
  std::istringstream in(first.str());
  const Mesh loaded = read_mesh(in);
  std::ostringstream second;
  write_mesh(loaded, second);
  CHECK(first.str() == second.str());

  // single unit square with four boundary vertices
  std::istringstream sq("4 1\n0 0\n1 0\n1 1\n0 1\n4 0 1 2 3\n");
  const Mesh unit = read_mesh(sq);
  CHECK(count_boundary_vertices(unit) == 4);

  std::istringstream bad("4 1\n0 0\n1 0\n1 1\n0 1\n4 0 1 2 9\n");
  CHECK_THROWS_WITH_AS(read_mesh(bad), doctest::Contains("polygon 0"), std::runtime_error);

  std::istringstream comments("# header\n4 1 # counts\n0 0\n1 0\n1 1\n0 1 # last\n4 0 1 2 3\n");
  CHECK(read_mesh(comments).num_polygons() == 1);

  std::istringstream garbage("nonsense");
  CHECK_THROWS(read_mesh(garbage));
}

TEST_CASE("element geometry normals point outward") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto ring = testsupport::random_convex_polygon(rng);
    const ElementGeometry g = ring_geometry(ring);
    CHECK(g.area > 0.0);
    for (std::size_t e = 0; e < ring.size(); ++e) {
      CHECK(g.edge_normal[e].norm() == doctest::Approx(1.0).epsilon(1e-14));
      const Vec2 mid = 0.5 * (ring[e] + ring[(e + 1) % ring.size()]);
      CHECK(g.edge_normal[e].dot(mid - g.centroid) > 0.0);
    }
  }
}
