#include "khull/faces.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace khull {

namespace {

double binomial(long n, long k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

bool satisfies_combinatorial_bound(const FVector& f) {
  if (f.counts.empty()) return true;
  const long f0 = f.counts[0];
  for (std::size_t k = 0; k < f.counts.size(); ++k)
    if (static_cast<double>(f.counts[k]) > binomial(f0, static_cast<long>(k) + 1) + 0.5) return false;
  return true;
}

FVector fvector_exact_2d(const ArcBoundary& x_boundary) {
  if (!x_boundary.report.ok) throw GeneralPositionError(x_boundary.report);
  std::set<std::array<std::size_t, 2>> pairs;
  for (const auto& v : x_boundary.vertices) pairs.insert({std::min(v.owners[0], v.owners[1]), std::max(v.owners[0], v.owners[1])});
  return {{static_cast<long>(x_boundary.owners().size()), static_cast<long>(pairs.size())}, false};
}

std::vector<OwnedCloud> polar_family(const ConvexBody& body, const PointSample& sample, std::size_t directions) {
  const auto grid = sphere_grid(body.dim(), directions);
  std::vector<double> h(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) h[j] = support(body, grid[j]);
  std::vector<OwnedCloud> family;
  family.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!body.interior(sample[i])) throw DomainError("polar_family: sample point outside Int K");
    OwnedCloud cloud{i, {}};
    cloud.points.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) cloud.points.push_back(grid[j] / (h[j] - sample[i].dot(grid[j])));
    family.push_back(std::move(cloud));
  }
  return family;
}

TaggedPolytope owner_tagged_hull(std::span<const OwnedCloud> family) {
  std::vector<TaggedPoint> all;
  for (const auto& cloud : family)
    for (const auto& p : cloud.points) all.push_back({cloud.owner, p});
  if (all.empty()) throw DomainError("owner_tagged_hull: empty family");
  try {
    return convex_hull(std::span<const TaggedPoint>(all));
  } catch (const DomainError&) {
    if (all.front().point.size() != 2) throw;
  }
  // Planar family on a line: the hull is a segment, kept as two opposite edges.
  std::size_t lo = 0, hi = 0;
  const Vector origin = all.front().point;
  Vector dir = Vector::Zero(2);
  for (const auto& p : all)
    if ((p.point - origin).norm() > dir.norm()) dir = p.point - origin;
  if (dir.norm() <= 1e-12 * (1.0 + origin.norm())) throw DomainError("owner_tagged_hull: all points coincide");
  for (std::size_t i = 0; i < all.size(); ++i) {
    if ((all[i].point - origin).dot(dir) < (all[lo].point - origin).dot(dir)) lo = i;
    if ((all[i].point - origin).dot(dir) > (all[hi].point - origin).dot(dir)) hi = i;
  }
  const Vector a = all[lo].point, b = all[hi].point;
  Vector n = vec2(b[1] - a[1], a[0] - b[0]).normalized();
  std::vector<HullFacet> facets{{{0, 1}, n, n.dot(a), {1, 1}}, {{1, 0}, -n, -n.dot(a), {0, 0}}};
  return TaggedPolytope(2, {all[lo], all[hi]}, std::move(facets));
}

FVector fvector_from_tagged_hull(const TaggedPolytope& hull) {
  const auto& verts = hull.vertices();
  std::map<std::size_t, int> multiplicity;
  for (const auto& v : verts) ++multiplicity[v.owner];
  const bool approximate =
      std::any_of(multiplicity.begin(), multiplicity.end(), [](const auto& kv) { return kv.second > 1; });

  std::set<std::vector<std::size_t>> pairs, triples;
  for (const auto& f : hull.facets()) {
    const std::size_t m = f.vertices.size();
    const std::size_t steps = hull.dim() == 2 ? 1 : m;
    for (std::size_t k = 0; k < steps; ++k) {
      std::size_t a = verts[f.vertices[k]].owner, b = verts[f.vertices[(k + 1) % m]].owner;
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      pairs.insert({a, b});
    }
    if (hull.dim() == 3) {
      std::vector<std::size_t> owners{verts[f.vertices[0]].owner, verts[f.vertices[1]].owner,
                                      verts[f.vertices[2]].owner};
      std::sort(owners.begin(), owners.end());
      if (std::unique(owners.begin(), owners.end()) == owners.end()) triples.insert(owners);
    }
  }
  FVector out;
  out.approximate = approximate;
  out.counts.push_back(static_cast<long>(multiplicity.size()));
  out.counts.push_back(static_cast<long>(pairs.size()));
  if (hull.dim() == 3) out.counts.push_back(static_cast<long>(triples.size()));
  return out;
}

FVector polytope_fvector(std::span<const Vector> points) {
  const TaggedPolytope hull = convex_hull(points);
  return {hull.f_vector(), false};
}

GeneralPositionReport general_position_check_2d(const ConvexBody& disk, const PointSample& sample, double tolerance) {
  GeneralPositionReport report;
  if (sample.empty()) return report;

  // Near-coincident points by a sweep over x.
  std::vector<std::size_t> order(sample.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sample[a][0] < sample[b][0]; });
  for (std::size_t ii = 0; ii < order.size(); ++ii)
    for (std::size_t jj = ii + 1; jj < order.size() && sample[order[jj]][0] - sample[order[ii]][0] <= tolerance; ++jj) {
      const std::size_t i = order[ii], j = order[jj];
      const double gap = (sample[i] - sample[j]).norm();
      if (gap <= tolerance)
        report.add({GeneralPositionViolation::Kind::Coincident, sample[i], {std::min(i, j), std::max(i, j)}, 0, gap});
    }
  if (!report.ok) return report;

  const ArcBoundary x = disk_intersection_boundary(disk, sample, {1e-9, tolerance});
  for (const auto& v : x.report.violations) report.add(v);
  return report;
}

KFacetCount kfacet_count_2d(const ConvexBody& disk, const PointSample& sample) {
  const ArcBoundary x = disk_intersection_boundary(disk, sample);
  const FVector f = fvector_exact_2d(x);
  const ArcBoundary q = khull_boundary_2d(disk, x);
  return {q.degenerate() ? 0L : static_cast<long>(q.arcs.size()), f};
}

}  // namespace khull
