#include "khull/formulas.hpp"

#include "khull/convex_hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace khull {

namespace {

constexpr double kPi = std::numbers::pi;

std::size_t default_nodes(int d, std::size_t requested) {
  if (requested) return requested;
  return d == 2 ? 4096 : 20000;
}

double factorial(int d) {
  double f = 1.0;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

double det(const Vector& a, const Vector& b) { return a[0] * b[1] - a[1] * b[0]; }

double det(const Vector& a, const Vector& b, const Vector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

void check_dim(int d, const char* where) {
  if (d != 2 && d != 3) throw ArgumentError(std::string(where) + ": dimension must be 2 or 3");
}

ConvexBody unit_volume(const ConvexBody& body) {
  return body.scaled(std::pow(body.volume(), -1.0 / body.dim()));
}

struct MeanAccumulator {
  double sum = 0.0, sum2 = 0.0;
  std::size_t count = 0;
  void add(double x) {
    sum += x;
    sum2 += x * x;
    ++count;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double standard_error() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum2 - count * m * m) / static_cast<double>(count - 1));
    return std::sqrt(var / static_cast<double>(count));
  }
};

void enforce(const QuadratureSpec& spec, const ExpectationEstimate& e) {
  if (spec.error_mode == QuadratureSpec::ErrorMode::FailAbove && e.standard_error > spec.tolerance)
    throw Error("quadrature: standard error " + std::to_string(e.standard_error) + " exceeds tolerance " +
                std::to_string(spec.tolerance));
}


// For a polytope PK is a zonotope whose facet normals are the atom normals
// turned by 90 degrees (plane) or the cross products of atom pairs (space),
// so both volumes come out of exact hulls.
double zonotope_volume_product(const ConvexBody& body, const ProjectionBody& pk) {
  const int d = body.dim();
  const SurfaceMeasureSampler sampler(body);
  const auto& atoms = sampler.atoms();
  std::vector<Vector> normals;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Vector& a = atoms[i].normal;
    if (d == 2) {
      normals.push_back(vec2(-a[1], a[0]));
      continue;
    }
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const Vector& b = atoms[j].normal;
      Vector c = vec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
      if (c.norm() > 1e-9) normals.push_back(c.normalized());
    }
  }
  std::vector<Vector> dual;
  for (const auto& n : normals)
    for (double s : {1.0, -1.0}) dual.push_back(s * n / pk.support(s * n));
  const TaggedPolytope polar = convex_hull(std::span<const Vector>(dual));
  std::vector<Vector> corners;
  for (const auto& f : polar.merged_facets()) corners.push_back(f.normal / f.offset);
  return convex_hull(std::span<const Vector>(corners)).volume() * polar.volume();
}

}  // namespace

std::string to_string(ExpectationEstimate::Method method) {
  switch (method) {
    case ExpectationEstimate::Method::ClosedForm:
      return "closed_form";
    case ExpectationEstimate::Method::Quadrature:
      return "quadrature";
    case ExpectationEstimate::Method::MonteCarlo:
      return "monte_carlo";
  }
  return "unknown";
}

ProjectionBody::ProjectionBody(const ConvexBody& body, std::size_t nodes) : dim_(body.dim()) {
  if (const auto* b = body.as_ball()) {
    factor_ = unit_ball_volume(dim_ - 1) * std::pow(b->radius, dim_ - 1);
  } else if (const auto* e = body.as_ellipsoid()) {
    factor_ = unit_ball_volume(dim_ - 1) * e->axes.prod();
    inverse_ = e->axes.cwiseInverse().asDiagonal() * e->rotation.transpose();
    linear_ = true;
  } else {
    check_dim(dim_, "projection_body_support");
    atoms_ = SurfaceMeasureSampler(body).discretize(nodes ? nodes : (dim_ == 2 ? 16384 : 4096));
  }
}

double ProjectionBody::support(const Vector& x) const {
  if (x.size() != dim_) throw ArgumentError("projection_body_support: dimension mismatch");
  if (x.norm() == 0.0) throw ArgumentError("projection_body_support: zero direction");
  if (linear_) return factor_ * (inverse_ * x).norm();
  if (atoms_.empty()) return factor_ * x.norm();
  double h = 0.0;
  for (const auto& a : atoms_) h += a.weight * std::abs(a.normal.dot(x));
  return 0.5 * h;
}

double projection_body_support(const ConvexBody& body, const Vector& x) { return ProjectionBody(body).support(x); }

double volume_polar_radial(const std::function<double(const Vector&)>& support, int d, std::size_t nodes) {
  check_dim(d, "volume_polar_radial");
  if (nodes == 0) throw ArgumentError("volume_polar_radial: need at least one node");
  const double weight = unit_sphere_area(d) / static_cast<double>(nodes);
  double sum = 0.0;
  for (const auto& u : sphere_grid(d, nodes)) {
    const double h = support(u);
    if (!(h > 0.0)) throw DomainError("volume_polar_radial: support must be positive");
    sum += std::pow(h, -d);
  }
  return weight * sum / d;
}

double volume_from_support(const std::function<double(const Vector&)>& support, int d, std::size_t nodes) {
  check_dim(d, "volume_from_support");
  const auto grid = sphere_grid(d, nodes);
  std::vector<double> h(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    h[j] = support(grid[j]);
    if (!(h[j] > 0.0)) throw DomainError("volume_from_support: support must be positive");
  }
  if (d == 2) {
    double sum = 0.0;
    for (const auto& u : grid) {
      double rho = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < grid.size(); ++j) {
        const double c = u.dot(grid[j]);
        if (c > 1e-12) rho = std::min(rho, h[j] / c);
      }
      sum += rho * rho;
    }
    return 0.5 * sum * 2.0 * kPi / static_cast<double>(grid.size());
  }
  std::vector<Vector> dual;
  dual.reserve(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) dual.push_back(grid[j] / h[j]);
  std::vector<Vector> corners;
  for (const auto& f : convex_hull(std::span<const Vector>(dual)).merged_facets()) corners.push_back(f.normal / f.offset);
  return convex_hull(std::span<const Vector>(corners)).volume();
}

ExpectationEstimate ef0_symmetric(const ConvexBody& body, const QuadratureSpec& spec) {
  const int d = body.dim();
  check_dim(d, "ef0_symmetric");
  if (!body.origin_symmetric()) throw DomainError("ef0_symmetric: body is not origin symmetric; use ef0_general");
  const ProjectionBody pk(body);
  if (body.as_polytope()) {
    ExpectationEstimate e;
    e.value = std::pow(2.0, -d) * factorial(d) * zonotope_volume_product(body, pk);
    e.method = ExpectationEstimate::Method::ClosedForm;
    return e;
  }
  const auto h = [&](const Vector& u) { return pk.support(u); };
  const std::size_t nodes = default_nodes(d, spec.sphere_nodes);
  const double v = volume_from_support(h, d, nodes);
  const double vpolar = volume_polar_radial(h, d, nodes);
  ExpectationEstimate e;
  e.value = std::pow(2.0, -d) * factorial(d) * v * vpolar;
  e.method = ExpectationEstimate::Method::Quadrature;
  return e;
}

ExpectationEstimate inner_j(const ConvexBody& body, const Vector& x, std::size_t samples, Rng& rng) {
  const int d = body.dim();
  check_dim(d, "inner_j");
  if (samples == 0) throw ArgumentError("inner_j: need at least one sample");
  const SurfaceMeasureSampler sampler(unit_volume(body));
  const double scale = std::pow(sampler.total_mass(), d);
  MeanAccumulator acc;
  std::vector<Vector> v(d);
  for (std::size_t k = 0; k < samples; ++k) {
    bool inside = true;
    for (int i = 0; i < d; ++i) {
      v[i] = sampler.draw(rng);
      inside = inside && v[i].dot(x) >= 0.0;
    }
    acc.add(inside ? std::abs(d == 2 ? det(v[0], v[1]) : det(v[0], v[1], v[2])) : 0.0);
  }
  return {scale * acc.mean(), scale * acc.standard_error(), ExpectationEstimate::Method::MonteCarlo};
}

ExpectationEstimate ef0_general(const ConvexBody& body, const QuadratureSpec& spec, Rng& rng) {
  const int d = body.dim();
  check_dim(d, "ef0_general");
  if (spec.inner_samples == 0) throw ArgumentError("ef0_general: need at least one inner sample");
  const ConvexBody unit = unit_volume(body);
  const SurfaceMeasureSampler sampler(unit);
  const ProjectionBody pk(unit);
  const double scale = std::pow(sampler.total_mass(), d);
  MeanAccumulator acc;

  if (d == 2) {
    // Outer trapezoid nodes; for each tuple the admissible x form an arc of
    // length pi - angle(v1, v2), summed by periodic prefix sums.
    const std::size_t n = default_nodes(2, spec.sphere_nodes);
    const double step = 2.0 * kPi / static_cast<double>(n);
    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = step * static_cast<double>(j);
      const double h = pk.support(vec2(std::cos(theta), std::sin(theta)));
      prefix[j + 1] = prefix[j] + step * std::pow(h, -2) / 2.0;
    }
    const long N = static_cast<long>(n);
    const auto cumulative = [&](long k) {
      const long wraps = (k >= 0 ? k / N : -((-k + N - 1) / N));
      return static_cast<double>(wraps) * prefix[n] + prefix[static_cast<std::size_t>(k - wraps * N)];
    };
    for (std::size_t k = 0; k < spec.inner_samples; ++k) {
      const Vector v1 = sampler.draw(rng), v2 = sampler.draw(rng);
      const double p1 = std::atan2(v1[1], v1[0]);
      double delta = std::atan2(v2[1], v2[0]) - p1;
      delta = std::remainder(delta, 2.0 * kPi);
      const double lo = delta >= 0.0 ? p1 + delta - kPi / 2 : p1 - kPi / 2;
      const double hi = delta >= 0.0 ? p1 + kPi / 2 : p1 + delta + kPi / 2;
      const long a = static_cast<long>(std::ceil(lo / step));
      const long b = static_cast<long>(std::floor(hi / step));
      const double arc = b >= a ? cumulative(b + 1) - cumulative(a) : 0.0;
      acc.add(std::abs(det(v1, v2)) * arc);
    }
  } else {
    const std::size_t per = std::max<std::size_t>(1, spec.directions_per_sample);
    const double sphere = unit_sphere_area(3);
    for (std::size_t k = 0; k < spec.inner_samples; ++k) {
      const Vector v1 = sampler.draw(rng), v2 = sampler.draw(rng), v3 = sampler.draw(rng);
      const double D = std::abs(det(v1, v2, v3));
      double g = 0.0;
      for (std::size_t l = 0; l < per; ++l) {
        const Vector x = random_direction(3, rng);
        if (v1.dot(x) >= 0.0 && v2.dot(x) >= 0.0 && v3.dot(x) >= 0.0) g += sphere * std::pow(pk.support(x), -3) / 3.0;
      }
      acc.add(D * g / static_cast<double>(per));
    }
  }
  ExpectationEstimate e{scale * acc.mean(), scale * acc.standard_error(), ExpectationEstimate::Method::MonteCarlo};
  enforce(spec, e);
  return e;
}

ExpectationEstimate ef0_general(const ConvexBody& body, const QuadratureSpec& spec) {
  Rng rng(spec.seed);
  return ef0_general(body, spec, rng);
}

}  // namespace khull
