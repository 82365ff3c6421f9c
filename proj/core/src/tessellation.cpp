#include "khull/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace khull {

HyperplaneProcess::HyperplaneProcess(const ConvexBody& body) : sampler_(body) {
  const double v = body.volume();
  if (!(v > 0.0)) throw DomainError("HyperplaneProcess: body has no volume");
  rate_ = sampler_.total_mass() / v;
}

HyperplaneSample HyperplaneProcess::sample(double lower, double upper, Rng& rng) const {
  if (!(lower >= 0.0) || !(upper > lower)) throw ArgumentError("sample_hyperplanes: need 0 <= lower < upper");
  HyperplaneSample out;
  out.lower = lower;
  out.truncation = upper;
  out.rate = rate_;
  std::poisson_distribution<long> count(rate_ * (upper - lower));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const long m = count(rng);
  out.items.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    // (lower, upper]
    const double t = upper - (upper - lower) * unit(rng);
    out.items.push_back({t, sampler_.draw(rng)});
  }
  return out;
}

HyperplaneSample sample_hyperplanes(const ConvexBody& body, double truncation, Rng& rng) {
  if (!(truncation > 0.0)) throw ArgumentError("sample_hyperplanes: truncation must be positive");
  return HyperplaneProcess(body).sample(0.0, truncation, rng);
}

ZeroCell zero_cell(const HyperplaneProcess& process, Rng& rng, double initial_truncation) {
  if (!(initial_truncation > 0.0)) throw ArgumentError("zero_cell: truncation must be positive");
  const int d = process.dim();
  if (d != 2 && d != 3) throw ArgumentError("zero_cell: dimension must be 2 or 3");

  ZeroCell z;
  double T = initial_truncation;
  z.hyperplanes = process.sample(0.0, T, rng).items;

  constexpr int max_doublings = 20;
  for (int layer = 0;; ++layer) {
    if (z.hyperplanes.size() >= static_cast<std::size_t>(d + 1)) {
      std::vector<TaggedPoint> points;
      points.reserve(z.hyperplanes.size());
      for (std::size_t i = 0; i < z.hyperplanes.size(); ++i)
        points.push_back({i, z.hyperplanes[i].normal / z.hyperplanes[i].distance});
      std::optional<TaggedPolytope> dual;
      try {
        dual = convex_hull(std::span<const TaggedPoint>(points));
      } catch (const DomainError&) {
      }
      if (dual && dual->min_offset() > 0.0) {
        const auto merged = dual->merged_facets();
        std::vector<TaggedPoint> corners;
        corners.reserve(merged.size());
        double reach = 0.0;
        for (std::size_t k = 0; k < merged.size(); ++k) {
          Vector a = merged[k].normal / merged[k].offset;
          reach = std::max(reach, a.norm());
          corners.push_back({k, std::move(a)});
        }
        if (reach <= T) {
          z.cell = convex_hull(std::span<const TaggedPoint>(corners));
          z.dual_fvector = {dual->f_vector(), false};
          z.cell_fvector = {{z.dual_fvector.counts.rbegin(), z.dual_fvector.counts.rend()}, false};
          z.dual = std::move(*dual);
          z.certified = true;
          z.truncation = T;
          z.layers = layer;
          return z;
        }
      }
    }
    if (layer == max_doublings) break;
    auto more = process.sample(T, 2.0 * T, rng).items;
    z.hyperplanes.insert(z.hyperplanes.end(), std::make_move_iterator(more.begin()),
                         std::make_move_iterator(more.end()));
    T *= 2.0;
  }
  throw Error("zero_cell: not certified after 20 doublings");
}

ZeroCell zero_cell(const ConvexBody& body, Rng& rng, double initial_truncation) {
  return zero_cell(HyperplaneProcess(body), rng, initial_truncation);
}

IntrinsicVolumes intrinsic_volumes(const TaggedPolytope& polytope) {
  const int d = polytope.dim();
  if (d != 2 && d != 3) throw ArgumentError("intrinsic_volumes: dimension must be 2 or 3");
  const double vol = polytope.volume();
  if (!(vol > 0.0)) throw DomainError("intrinsic_volumes: polytope is not full-dimensional");
  if (d == 2) return {{1.0, 0.5 * polytope.surface_area(), vol}};
  double mean = 0.0;
  for (const auto& e : polytope.merged_edges()) mean += e.length * e.exterior_angle;
  return {{1.0, mean / (2.0 * std::numbers::pi), 0.5 * polytope.surface_area(), vol}};
}

IntrinsicVolumes intrinsic_volumes(const ArcBoundary& boundary) {
  if (boundary.degenerate()) return {{1.0, 0.0, 0.0}};
  return {{1.0, 0.5 * boundary.perimeter(), boundary.area()}};
}

IntrinsicVolumes scale_intrinsic_volumes(const IntrinsicVolumes& v, double factor) {
  IntrinsicVolumes out = v;
  double p = 1.0;
  for (auto& x : out.values) {
    x *= p;
    p *= factor;
  }
  return out;
}

namespace {

SampleStatistics disk_statistics(const ConvexBody& disk, std::size_t n, const PointSample& sample) {
  SampleStatistics s;
  ArcBoundary x = disk_intersection_boundary(disk, sample);
  s.general_position = x.report.ok;
  s.scaled_volumes = scale_intrinsic_volumes(intrinsic_volumes(x), static_cast<double>(n));
  s.candidates = extreme_point_indices(sample).size();
  ArcBoundary counted = x;
  counted.report = {};
  s.fvector = fvector_exact_2d(counted);
  const ArcBoundary q = khull_boundary_2d(disk, counted);
  s.kfacets = q.degenerate() ? 0L : static_cast<long>(q.arcs.size());
  return s;
}

// Inscribed polygon/polytope of X seen from p0: the points p0 + r(u) u.
std::vector<Vector> radial_points(const ConvexBody& body, const PointSample& a, const Vector& p0,
                                  const std::vector<Vector>& grid) {
  std::vector<Vector> pts;
  pts.reserve(grid.size());
  for (const auto& u : grid) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& x : a) r = std::min(r, ray_exit(body, p0 + x, u));
    pts.push_back(p0 + r * u);
  }
  return pts;
}

SampleStatistics general_statistics(const ConvexBody& body, std::size_t n, const PointSample& sample,
                                    const ScaledStatisticsOptions& options) {
  const int d = body.dim();
  SampleStatistics s;
  PointSample a;
  for (std::size_t i : extreme_point_indices(sample)) a.push_back(sample[i]);
  s.candidates = a.size();

  const std::size_t m = options.radial_directions ? options.radial_directions : (d == 2 ? 512 : 2048);
  const auto grid = sphere_grid(d, m);

  // Second pass from the centroid of the first, so the probes are well spread.
  Vector p0 = Vector::Zero(d);
  auto pts = radial_points(body, a, p0, grid);
  Vector c = Vector::Zero(d);
  for (const auto& p : pts) c += p;
  p0 = c / static_cast<double>(pts.size());
  pts = radial_points(body, a, p0, grid);
  const TaggedPolytope inner = convex_hull(std::span<const Vector>(pts));

  // Outer polytope: halfspaces <x - p0, u> <= min_i h(K - a_i, u) - <p0, u>.
  std::vector<Vector> polar;
  polar.reserve(grid.size());
  for (const auto& u : grid) {
    double hb = std::numeric_limits<double>::infinity();
    const double h = support(body, u);
    for (const auto& x : a) hb = std::min(hb, h - x.dot(u));
    polar.push_back(u / (hb - p0.dot(u)));
  }
  const TaggedPolytope polar_hull = convex_hull(std::span<const Vector>(polar));
  std::vector<Vector> outer_pts;
  for (const auto& f : polar_hull.merged_facets()) outer_pts.push_back(f.normal / f.offset);
  const double outer_volume = convex_hull(std::span<const Vector>(outer_pts)).volume();

  const double scale = static_cast<double>(n);
  s.scaled_volumes = scale_intrinsic_volumes(intrinsic_volumes(inner), scale);
  s.volume_gap = std::pow(scale, d) * (outer_volume - inner.volume());

  PointSample shifted;
  shifted.reserve(a.size());
  for (const auto& x : a) shifted.push_back(x + p0);
  const auto family = polar_family(body, shifted, options.polar_directions);
  s.fvector = fvector_from_tagged_hull(owner_tagged_hull(family));
  s.fvector.approximate = true;
  return s;
}

}  // namespace

SampleStatistics scaled_sample_statistics(const ConvexBody& body, std::size_t n, Rng& rng,
                                          const ScaledStatisticsOptions& options) {
  if (n == 0) throw ArgumentError("scaled_sample_statistics: n must be positive");
  const int d = body.dim();
  if (d != 2 && d != 3) throw ArgumentError("scaled_sample_statistics: dimension must be 2 or 3");
  const PointSample sample = uniform_sample(body, n, rng);
  if (d == 2 && body.kind() == BodyKind::Ball) return disk_statistics(body, n, sample);
  return general_statistics(body, n, sample, options);
}

}  // namespace khull
