#include "doctest.h"

#include "khull/convex_hull.hpp"

#include <set>

using namespace khull;
using doctest::Approx;

TEST_SUITE("convex_hull") {
  TEST_CASE("triangle and square in the plane") {
    const std::vector<Vector> tri{vec2(0, 0), vec2(1, 0), vec2(0, 1)};
    CHECK(convex_hull(std::span<const Vector>(tri)).f_vector() == std::vector<long>{3, 3});
    // Collinear and interior points are dropped.
    const std::vector<Vector> sq{vec2(0, 0), vec2(1, 0), vec2(2, 0), vec2(2, 2), vec2(0, 2), vec2(1, 1), vec2(0, 1)};
    const TaggedPolytope p = convex_hull(std::span<const Vector>(sq));
    CHECK(p.vertices().size() == 4);
    CHECK(p.volume() == Approx(4.0));
    CHECK(p.surface_area() == Approx(8.0));
    std::set<std::size_t> owners;
    for (const auto& v : p.vertices()) owners.insert(v.owner);
    CHECK(owners == std::set<std::size_t>{0, 2, 3, 4});
  }

  TEST_CASE("octahedron") {
    const std::vector<Vector> pts{vec3(1, 0, 0), vec3(-1, 0, 0), vec3(0, 1, 0), vec3(0, -1, 0), vec3(0, 0, 1), vec3(0, 0, -1)};
    const TaggedPolytope p = convex_hull(std::span<const Vector>(pts));
    CHECK(p.f_vector() == std::vector<long>{6, 12, 8});
    CHECK(p.volume() == Approx(4.0 / 3.0));
    CHECK(p.min_offset() == Approx(1.0 / std::sqrt(3.0)));
  }

  TEST_CASE("cube merges coplanar triangles") {
    std::vector<Vector> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(vec3(i & 1 ? 1 : -1, i & 2 ? 1 : -1, i & 4 ? 1 : -1));
    pts.push_back(vec3(0, 0, 1));  // on a face
    pts.push_back(vec3(1, 1, 0));  // on an edge
    const TaggedPolytope p = convex_hull(std::span<const Vector>(pts));
    CHECK(p.f_vector() == std::vector<long>{8, 12, 6});
    CHECK(p.volume() == Approx(8.0));
    CHECK(p.surface_area() == Approx(24.0));
    const auto edges = p.merged_edges();
    CHECK(edges.size() == 12);
    for (const auto& e : edges) {
      CHECK(e.length == Approx(2.0));
      CHECK(e.exterior_angle == Approx(std::numbers::pi / 2));
    }
    CHECK(p.merged_facets().size() == 6);
  }

  TEST_CASE("random points on the sphere give a simplicial polytope") {
    Rng rng(1);
    std::vector<Vector> pts;
    for (int i = 0; i < 50; ++i) pts.push_back(random_direction(3, rng));
    const auto f = convex_hull(std::span<const Vector>(pts)).f_vector();
    CHECK(f[0] == 50);
    CHECK(f[0] - f[1] + f[2] == 2);
    CHECK(f[1] == 3 * f[0] - 6);
  }

  TEST_CASE("facets are oriented outward with unit normals") {
    Rng rng(2);
    std::vector<Vector> pts;
    for (int i = 0; i < 300; ++i) pts.push_back(std::uniform_real_distribution<double>(0.2, 1.0)(rng) * random_direction(3, rng));
    const TaggedPolytope p = convex_hull(std::span<const Vector>(pts));
    for (const auto& f : p.facets()) {
      CHECK(f.normal.norm() == Approx(1.0));
      for (const auto& q : pts) CHECK(f.normal.dot(q) <= f.offset + 1e-12);
    }
    for (const auto& q : pts) CHECK(p.facet_excess(q) <= 1e-12);
  }

  TEST_CASE("distance to a polytope") {
    const std::vector<Vector> sq{vec2(0, 0), vec2(1, 0), vec2(1, 1), vec2(0, 1)};
    const TaggedPolytope p = convex_hull(std::span<const Vector>(sq));
    CHECK(p.distance(vec2(0.5, 0.5)) == 0.0);
    CHECK(p.distance(vec2(2, 0.5)) == Approx(1.0));
    CHECK(p.distance(vec2(2, 2)) == Approx(std::sqrt(2.0)));
    std::vector<Vector> cube;
    for (int i = 0; i < 8; ++i) cube.push_back(vec3(i & 1, (i >> 1) & 1, (i >> 2) & 1));
    const TaggedPolytope c = convex_hull(std::span<const Vector>(cube));
    CHECK(c.distance(vec3(2, 2, 2)) == Approx(std::sqrt(3.0)));
    CHECK(c.distance(vec3(0.5, 0.5, 3)) == Approx(2.0));
  }

  TEST_CASE("degenerate inputs") {
    const std::vector<Vector> line{vec2(0, 0), vec2(1, 1), vec2(2, 2)};
    CHECK_THROWS_AS(convex_hull(std::span<const Vector>(line)), DomainError);
    const std::vector<Vector> flat{vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0), vec3(1, 1, 0)};
    CHECK_THROWS_AS(convex_hull(std::span<const Vector>(flat)), DomainError);
  }

  TEST_CASE("extreme points") {
    Rng rng(3);
    std::vector<Vector> pts;
    for (int i = 0; i < 200; ++i) pts.push_back(0.5 * random_direction(2, rng) * std::uniform_real_distribution<double>(0, 1)(rng));
    pts.push_back(vec2(2, 0));
    pts.push_back(vec2(-2, 0));
    pts.push_back(vec2(0, 2));
    pts.push_back(vec2(0, -2));
    const auto idx = extreme_point_indices(std::span<const Vector>(pts));
    CHECK(std::set<std::size_t>(idx.begin(), idx.end()) == std::set<std::size_t>{200, 201, 202, 203});
  }
}
