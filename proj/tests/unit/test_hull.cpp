#include "doctest.h"

#include "../support/checks.hpp"
#include "../support/oracles.hpp"

#include "khull/hull.hpp"
#include "khull/serialize.hpp"

#include <set>

using namespace khull;
using doctest::Approx;

namespace {

const ConvexBody unit_disk = ConvexBody::ball(1.0, vec2(0, 0));
const ConvexBody square = ConvexBody::polytope({vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)});

}  // namespace

TEST_SUITE("hull") {
  TEST_CASE("Minkowski difference membership") {
    CHECK(mink_diff_contains(unit_disk, {vec2(0, 0)}, vec2(0.5, 0)));
    CHECK_FALSE(mink_diff_contains(unit_disk, {vec2(0, 0)}, vec2(1.5, 0)));

    // K (-) K = {0}: the vertex set of the square only admits the zero shift.
    const PointSample corners{vec2(-1, -1), vec2(1, -1), vec2(1, 1), vec2(-1, 1)};
    CHECK(mink_diff_contains(square, corners, vec2(0, 0)));
    CHECK_FALSE(mink_diff_contains(square, corners, vec2(1e-6, 0)));
    PointSample circle;
    for (int i = 0; i < 64; ++i) circle.push_back(vec2(std::cos(i * oracle::pi / 32), std::sin(i * oracle::pi / 32)));
    CHECK(mink_diff_contains(unit_disk, circle, vec2(0, 0)));
    CHECK_FALSE(mink_diff_contains(unit_disk, circle, vec2(0, 1e-6)));
  }

  TEST_CASE("intersection body needs interior sample points") {
    CHECK_THROWS_AS(IntersectionBody(unit_disk, {vec2(1, 0)}), DomainError);
    CHECK_THROWS_AS(IntersectionBody(unit_disk, {}), ArgumentError);
  }

  TEST_CASE("radial function") {
    const IntersectionBody x0(unit_disk, {vec2(0, 0)});
    Rng rng(1);
    for (int i = 0; i < 10; ++i) CHECK(radial(x0, random_direction(2, rng)) == Approx(1.0));

    const double a = 0.6;
    const IntersectionBody lens(unit_disk, {vec2(0, a), vec2(0, -a)});
    CHECK(radial(lens, vec2(1, 0)) == Approx(std::sqrt(1 - a * a)));
    for (int i = 0; i < 100; ++i) {
      const Vector u = random_direction(2, rng);
      const RadialHit hit = radial_hit(lens, u);
      CHECK(gauge(unit_disk, lens.sample()[hit.owner] + hit.radius * u) == Approx(1.0).epsilon(1e-9));
      CHECK(mink_diff_contains(unit_disk, lens.sample(), hit.radius * u, 1e-9));
    }
  }

  TEST_CASE("outer support bound") {
    const Vector xi = vec2(0.2, -0.4);
    const IntersectionBody single(unit_disk, {xi});
    Rng rng(2);
    for (int i = 0; i < 20; ++i) {
      const Vector u = random_direction(2, rng);
      CHECK(outer_support_bound(single, u) == Approx(support(unit_disk.translated(-xi), u)));
    }
    const double a = 0.6;
    const IntersectionBody lens(unit_disk, {vec2(0, a), vec2(0, -a)});
    CHECK(outer_support_bound(lens, vec2(0, 1)) == Approx(1 - a));

    const PointSample sample = uniform_sample(unit_disk, 30, rng);
    const IntersectionBody x(unit_disk, sample);
    for (int i = 0; i < 1000; ++i) {
      const Vector u = random_direction(2, rng);
      CHECK(radial(x, u) <= outer_support_bound(x, u) + 1e-9);
    }
  }

  TEST_CASE("K-hull membership") {
    const double a = 0.6;
    const PointSample pts{vec2(0, a), vec2(0, -a)};
    CHECK(khull_contains(unit_disk, pts, pts[0], 64).verdict == Membership::In);
    // The lens through both points reaches 1 - sqrt(1 - a^2) along the x axis.
    const double reach = 1 - std::sqrt(1 - a * a);
    CHECK(khull_contains(unit_disk, pts, vec2(reach + 0.01, 0), 256).verdict == Membership::Out);
    CHECK(khull_contains(unit_disk, pts, vec2(reach - 0.01, 0), 256).verdict == Membership::In);
    CHECK(khull_contains(unit_disk, pts, vec2(0, a + 0.01), 256).verdict == Membership::Out);
  }

  TEST_CASE("K-hull of the square example") {
    const auto r = checks::square_example();
    CHECK_MESSAGE(r.ok, r.detail);
  }

  TEST_CASE("single point gives a full circle") {
    const ArcBoundary x = disk_intersection_boundary(unit_disk, {vec2(0, 0)});
    REQUIRE(x.arcs.size() == 1);
    CHECK(x.vertices.empty());
    CHECK(x.owners() == std::vector<std::size_t>{0});
    CHECK(x.arcs[0].a1 - x.arcs[0].a0 == Approx(2 * oracle::pi));
    CHECK(x.area() == Approx(oracle::pi));
    CHECK(x.perimeter() == Approx(2 * oracle::pi));
  }

  TEST_CASE("two points give the classical lens") {
    const double a = 0.6;
    const ArcBoundary x = disk_intersection_boundary(unit_disk, {vec2(0, a), vec2(0, -a)});
    REQUIRE(x.arcs.size() == 2);
    REQUIRE(x.vertices.size() == 2);
    const auto [p, q] = oracle::circle_pair(vec2(0, -a), vec2(0, a), 1.0);
    for (const auto& v : x.vertices) {
      CHECK(std::min((v.point - p).norm(), (v.point - q).norm()) < 1e-12);
      CHECK(std::set<std::size_t>{v.owners[0], v.owners[1]} == std::set<std::size_t>{0, 1});
    }
    // Lens area: two circular segments with half angle acos(a).
    const double t = 2 * std::acos(a);
    CHECK(x.area() == Approx(t - std::sin(t)));
  }

  TEST_CASE("arc boundary of a random sample") {
    Rng rng(3);
    const PointSample sample = uniform_sample(unit_disk, 10, rng);
    const ArcBoundary x = disk_intersection_boundary(unit_disk, sample);
    REQUIRE(x.report.ok);
    std::set<std::size_t> owners;
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& arc : x.arcs) owners.insert(arc.owner);
    for (const auto& v : x.vertices) pairs.insert({std::min(v.owners[0], v.owners[1]), std::max(v.owners[0], v.owners[1])});
    CHECK(owners.size() == x.owners().size());
    CHECK(owners.size() == pairs.size());
    // Every arc point is on its own circle and inside every other disk.
    for (std::size_t k = 0; k < x.arcs.size(); ++k)
      for (double s : {0.1, 0.5, 0.9}) {
        const Vector p = x.point_on_arc(k, s);
        CHECK((p + sample[x.arcs[k].owner]).norm() == Approx(1.0).epsilon(1e-12));
        CHECK(mink_diff_contains(unit_disk, sample, p, 1e-9));
      }
    // Consecutive arcs meet at the shared vertex.
    for (std::size_t k = 0; k < x.arcs.size(); ++k) {
      CHECK((x.point_on_arc(k, 1.0) - x.vertices[(k + 1) % x.vertices.size()].point).norm() < 1e-9);
      CHECK((x.point_on_arc(k, 0.0) - x.vertices[k].point).norm() < 1e-9);
    }
  }

  TEST_CASE("boundary pieces are arcs of radius one") {
    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
      const ArcBoundary x = disk_intersection_boundary(unit_disk, uniform_sample(unit_disk, 50, rng));
      for (const auto& arc : x.arcs) {
        CHECK(arc.radius == 1.0);
        CHECK(arc.a1 > arc.a0);
      }
    }
  }

  TEST_CASE("K-hull boundary of one and two points") {
    const ArcBoundary q1 = khull_boundary_2d(unit_disk, PointSample{vec2(0.3, 0.1)});
    REQUIRE(q1.degenerate());
    CHECK((*q1.singleton - vec2(0.3, 0.1)).norm() < 1e-12);

    const double a = 0.6;
    const ArcBoundary q2 = khull_boundary_2d(unit_disk, PointSample{vec2(0, a), vec2(0, -a)});
    REQUIRE(q2.arcs.size() == 2);
    for (const auto& v : q2.vertices) CHECK(std::min((v.point - vec2(0, a)).norm(), (v.point - vec2(0, -a)).norm()) < 1e-12);
  }

  TEST_CASE("sample points owning arcs of X lie on the boundary of Q") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
      const PointSample sample = uniform_sample(unit_disk, 10, rng);
      const ArcBoundary x = disk_intersection_boundary(unit_disk, sample);
      const ArcBoundary q = khull_boundary_2d(unit_disk, x);
      std::size_t on_boundary = 0;
      for (std::size_t i = 0; i < sample.size(); ++i) {
        const double e = oracle::arc_region_excess(q, sample[i]);
        CHECK(e <= 1e-9);
        if (std::abs(e) <= 1e-9) ++on_boundary;
      }
      CHECK(on_boundary == x.owners().size());
      CHECK(q.arcs.size() == x.vertices.size());
      CHECK(x.arcs.size() == q.vertices.size());
    }
  }

  TEST_CASE("idempotence of the K-hull") {
    const auto r = checks::idempotence(21);
    CHECK_MESSAGE(r.ok, r.detail);
  }

  TEST_CASE("duplicates are dropped and reported") {
    const ArcBoundary x = disk_intersection_boundary(unit_disk, {vec2(0, 0.5), vec2(0, -0.5), vec2(0, 0.5)});
    CHECK(x.duplicates == std::vector<std::size_t>{2});
    CHECK_FALSE(x.report.ok);
    CHECK(x.arcs.size() == 2);
  }

  TEST_CASE("arc boundary JSON") {
    const ArcBoundary x = disk_intersection_boundary(unit_disk, {vec2(0, 0.5), vec2(0, -0.5)});
    const std::string s = to_json(x);
    for (const char* key : {"\"arcs\"", "\"vertices\"", "\"owner\"", "\"owners\"", "\"a0\"", "\"a1\"", "\"center\"", "\"point\""})
      CHECK(s.find(key) != std::string::npos);
  }

  TEST_CASE("non-disk bodies are rejected by the exact pipeline") {
    CHECK_THROWS(disk_intersection_boundary(square, {vec2(0, 0)}));
    CHECK_THROWS(disk_intersection_boundary(ConvexBody::ball(1, vec3(0, 0, 0)), {vec3(0, 0, 0)}));
  }
}
