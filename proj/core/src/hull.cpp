#include "khull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace khull {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

const Ball& require_disk(const ConvexBody& body) {
  const Ball* b = body.as_ball();
  if (!b || body.dim() != 2) throw UnsupportedKindError("arc pipeline requires a disk in the plane");
  return *b;
}

// theta - sin(theta) without cancellation for small theta.
double theta_minus_sin(double t) {
  if (t < 1e-2) {
    const double t2 = t * t;
    return t * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0));
  }
  return t - std::sin(t);
}

double angle_of(const Vector& v) { return std::atan2(v[1], v[0]); }

}  // namespace

std::string to_string(GeneralPositionViolation::Kind kind) {
  switch (kind) {
    case GeneralPositionViolation::Kind::Coincident:
      return "coincident";
    case GeneralPositionViolation::Kind::NearTangent:
      return "near-tangent";
    case GeneralPositionViolation::Kind::MultipleIncidence:
      return "multiple-incidence";
  }
  return "unknown";
}

IntersectionBody::IntersectionBody(ConvexBody base, PointSample sample) : base_(std::move(base)), sample_(std::move(sample)) {
  if (sample_.empty()) throw ArgumentError("intersection body: empty sample");
  for (const auto& a : sample_) {
    if (a.size() != base_.dim()) throw ArgumentError("intersection body: dimension mismatch");
    if (!base_.interior(a)) throw DomainError("intersection body: sample point outside Int K, origin not interior");
  }
}

bool mink_diff_contains(const ConvexBody& body, const PointSample& sample, const Vector& x, double tolerance) {
  return std::all_of(sample.begin(), sample.end(),
                     [&](const Vector& a) { return centered_gauge(body, a + x) <= 1.0 + tolerance; });
}

RadialHit radial_hit(const IntersectionBody& body, const Vector& u) {
  RadialHit hit{std::numeric_limits<double>::infinity(), 0};
  const auto& sample = body.sample();
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double t = ray_exit(body.base(), sample[i], u);
    if (t < hit.radius) hit = {t, i};
  }
  return hit;
}

double radial(const IntersectionBody& body, const Vector& u) { return radial_hit(body, u).radius; }

double outer_support_bound(const IntersectionBody& body, const Vector& u) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& a : body.sample()) top = std::max(top, a.dot(u));
  return support(body.base(), u) - top;
}

MembershipVerdict khull_contains(const ConvexBody& body, const PointSample& sample, const Vector& z,
                                 std::size_t resolution) {
  const int d = body.dim();
  if (z.size() != d) throw ArgumentError("khull_contains: dimension mismatch");
  for (const auto& a : sample)
    if ((z - a).norm() <= 1e-14 * (1.0 + a.norm())) return {Membership::In, 0.0};
  if (resolution < static_cast<std::size_t>(2 * d + 2)) resolution = 2 * d + 2;

  const IntersectionBody x_body(body, sample);
  const auto directions = sphere_grid(d, resolution);

  for (const auto& u : directions) {
    const double r = radial(x_body, u);
    const double excess = centered_gauge(body, z + r * u) - 1.0;
    if (excess > 1e-12) return {Membership::Out, excess};
  }

  // Outer polytope of X from the support bounds, via its polar.
  std::vector<TaggedPoint> polar_points;
  polar_points.reserve(directions.size());
  for (std::size_t j = 0; j < directions.size(); ++j)
    polar_points.push_back({j, directions[j] / outer_support_bound(x_body, directions[j])});
  const TaggedPolytope polar = convex_hull(std::span<const TaggedPoint>(polar_points));
  double worst_outer = -std::numeric_limits<double>::infinity();
  for (const auto& f : polar.merged_facets())
    worst_outer = std::max(worst_outer, centered_gauge(body, z + f.normal / f.offset) - 1.0);
  if (worst_outer < -1e-12) return {Membership::In, -worst_outer};
  return {Membership::Unknown, worst_outer};
}

std::vector<std::size_t> ArcBoundary::owners() const {
  std::vector<std::size_t> out;
  for (const auto& a : arcs) out.push_back(a.owner);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double ArcBoundary::area() const {
  if (singleton || arcs.empty()) return 0.0;
  double segments = 0.0;
  for (const auto& a : arcs) segments += 0.5 * a.radius * a.radius * theta_minus_sin(a.a1 - a.a0);
  if (vertices.size() < 3) return segments;
  const Vector& p0 = vertices.front().point;
  double poly = 0.0;
  for (std::size_t k = 1; k + 1 < vertices.size(); ++k) {
    const Vector a = vertices[k].point - p0, b = vertices[k + 1].point - p0;
    poly += a[0] * b[1] - a[1] * b[0];
  }
  return 0.5 * poly + segments;
}

double ArcBoundary::perimeter() const {
  double s = 0.0;
  for (const auto& a : arcs) s += a.radius * (a.a1 - a.a0);
  return s;
}

Vector ArcBoundary::point_on_arc(std::size_t k, double s) const {
  const Arc& a = arcs.at(k);
  const double t = a.a0 + s * (a.a1 - a.a0);
  return a.center + a.radius * vec2(std::cos(t), std::sin(t));
}

ArcBoundary intersect_equal_disks(std::span<const Vector> centers, double radius, const ArcTolerances& tol) {
  if (centers.empty()) throw ArgumentError("intersect_equal_disks: no disks");
  ArcBoundary out;

  // Deduplicate coincident centers.
  std::vector<std::size_t> unique;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (centers[i].size() != 2) throw ArgumentError("intersect_equal_disks: centers must be planar");
    const auto dup = std::find_if(unique.begin(), unique.end(), [&](std::size_t j) {
      return (centers[i] - centers[j]).norm() <= 1e-14 * radius;
    });
    if (dup != unique.end()) {
      out.duplicates.push_back(i);
      out.report.add({GeneralPositionViolation::Kind::Coincident, centers[i], {*dup, i}, 0, 0.0});
    } else {
      unique.push_back(i);
    }
  }

  if (unique.size() == 1) {
    const std::size_t o = unique.front();
    out.arcs.push_back({o, centers[o], radius, 0.0, kTwoPi});
    return out;
  }

  // Disks centered inside the convex hull of the centers are redundant.
  std::vector<Vector> unique_centers;
  for (std::size_t i : unique) unique_centers.push_back(centers[i]);
  std::vector<std::size_t> cand;
  for (std::size_t k : extreme_point_indices(std::span<const Vector>(unique_centers))) cand.push_back(unique[k]);

  struct Raw {
    Vector point;
    std::array<std::size_t, 2> owners;
  };
  std::vector<Raw> kept;
  for (std::size_t ii = 0; ii < cand.size(); ++ii) {
    for (std::size_t jj = ii + 1; jj < cand.size(); ++jj) {
      const std::size_t i = cand[ii], j = cand[jj];
      const Vector& ci = centers[i];
      const Vector& cj = centers[j];
      const Vector delta = cj - ci;
      const double dist = delta.norm();
      const double half = 0.5 * dist;
      if (half >= radius) throw DomainError("intersect_equal_disks: the intersection is empty");
      const double h = std::sqrt((radius - half) * (radius + half));
      if (h < tol.general_position * radius)
        out.report.add({GeneralPositionViolation::Kind::NearTangent, 0.5 * (ci + cj), {i, j}, 1, h});
      const Vector mid = 0.5 * (ci + cj);
      const Vector perp = vec2(-delta[1], delta[0]) / dist;
      for (double sign : {1.0, -1.0}) {
        const Vector p = mid + sign * h * perp;
        double worst = -std::numeric_limits<double>::infinity();
        double near_gap = std::numeric_limits<double>::infinity();
        std::size_t near = i;
        for (std::size_t k : cand) {
          if (k == i || k == j) continue;
          const double excess = (p - centers[k]).norm() - radius;
          worst = std::max(worst, excess);
          if (std::abs(excess) < near_gap) near_gap = std::abs(excess), near = k;
        }
        const bool inside = worst <= tol.geometric;
        if (worst < tol.general_position && near_gap < tol.general_position) {
          // A third circle passes (almost) through a boundary vertex.
          std::vector<std::size_t> triple{i, j, near};
          std::sort(triple.begin(), triple.end());
          const bool seen = std::any_of(out.report.violations.begin(), out.report.violations.end(),
                                        [&](const GeneralPositionViolation& v) { return v.indices == triple; });
          if (!seen) out.report.add({GeneralPositionViolation::Kind::MultipleIncidence, p, triple, 2, near_gap});
        }
        if (!inside) continue;
        const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Raw& r) {
          return (r.point - p).norm() <= tol.geometric * radius;
        });
        if (!dup) kept.push_back({p, {std::min(i, j), std::max(i, j)}});
      }
    }
  }
  if (kept.size() < 2) throw DomainError("intersect_equal_disks: failed to resolve boundary vertices");

  Vector pivot = Vector::Zero(2);
  for (const auto& r : kept) pivot += r.point;
  pivot /= static_cast<double>(kept.size());
  std::sort(kept.begin(), kept.end(),
            [&](const Raw& a, const Raw& b) { return angle_of(a.point - pivot) < angle_of(b.point - pivot); });

  // Arc between consecutive vertices: the shared owner whose arc midpoint is innermost.
  const std::size_t m = kept.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Raw& from = kept[k];
    const Raw& to = kept[(k + 1) % m];
    std::vector<std::size_t> options;
    for (std::size_t o : from.owners)
      if (o == to.owners[0] || o == to.owners[1]) options.push_back(o);
    if (options.empty()) {
      out.report.add({GeneralPositionViolation::Kind::MultipleIncidence, from.point,
                      {from.owners[0], from.owners[1], to.owners[0], to.owners[1]}, 2, 0.0});
      options = {from.owners[0], from.owners[1], to.owners[0], to.owners[1]};
    }
    Arc best;
    double best_excess = std::numeric_limits<double>::infinity();
    for (std::size_t o : options) {
      const Vector& c = centers[o];
      const double a0 = angle_of(from.point - c);
      double a1 = angle_of(to.point - c);
      while (a1 <= a0) a1 += kTwoPi;
      const double am = 0.5 * (a0 + a1);
      const Vector probe = c + radius * vec2(std::cos(am), std::sin(am));
      double excess = 0.0;
      for (std::size_t q : cand) excess = std::max(excess, (probe - centers[q]).norm() - radius);
      if (excess < best_excess) best_excess = excess, best = {o, c, radius, a0, a1};
    }
    out.arcs.push_back(best);
    out.vertices.push_back({from.owners, from.point});
  }
  return out;
}

ArcBoundary disk_intersection_boundary(const ConvexBody& disk, const PointSample& sample, const ArcTolerances& tol) {
  const Ball& ball = require_disk(disk);
  if (sample.empty()) throw ArgumentError("disk_intersection_boundary: empty sample");
  std::vector<Vector> centers;
  centers.reserve(sample.size());
  for (const auto& a : sample) {
    if (!disk.interior(a)) throw DomainError("disk_intersection_boundary: sample point outside Int K");
    centers.push_back(disk.center() - a);
  }
  return intersect_equal_disks(centers, ball.radius, tol);
}

ArcBoundary khull_boundary_2d(const ConvexBody& disk, const ArcBoundary& x_boundary, const ArcTolerances& tol) {
  const Ball& ball = require_disk(disk);
  if (x_boundary.vertices.size() < 2) {
    // X is a single translate K - a, whose K-hull is {a}.
    ArcBoundary out;
    out.report = x_boundary.report;
    out.duplicates = x_boundary.duplicates;
    const Arc& only = x_boundary.arcs.front();
    out.singleton = disk.center() - only.center;
    return out;
  }
  std::vector<Vector> centers;
  centers.reserve(x_boundary.vertices.size());
  for (const auto& v : x_boundary.vertices) centers.push_back(disk.center() - v.point);
  ArcBoundary out = intersect_equal_disks(centers, ball.radius, tol);
  for (auto& v : x_boundary.report.violations) out.report.add(v);
  out.duplicates = x_boundary.duplicates;
  return out;
}

ArcBoundary khull_boundary_2d(const ConvexBody& disk, const PointSample& sample, const ArcTolerances& tol) {
  return khull_boundary_2d(disk, disk_intersection_boundary(disk, sample, tol), tol);
}

}  // namespace khull
