#include "khull/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace khull {

namespace {

constexpr double kBisectionTolerance = 1e-13;

void require_nonzero(const Vector& u, const char* what) {
  if (!(u.norm() > 0.0)) throw ArgumentError(std::string(what) + ": zero direction");
}

void require_dim(const ConvexBody& body, const Vector& x, const char* what) {
  if (x.size() != body.dim()) throw ArgumentError(std::string(what) + ": dimension mismatch");
}

double pnorm(const Vector& x, double p) {
  const double m = x.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / m, p);
  return m * std::pow(s, 1.0 / p);
}

// Positive root t of ||x - t c|| = t r with ||c|| < r (gauge of an off-center ball).
double ball_gauge(const Vector& x, const Vector& c, double r) {
  const double xx = x.squaredNorm();
  if (xx == 0.0) return 0.0;
  const double xc = x.dot(c);
  const double a = r * r - c.squaredNorm();
  const double root = std::sqrt(xc * xc + a * xx);
  return xc <= 0.0 ? (-xc + root) / a : xx / (xc + root);
}

// Largest t with ||q + t u|| = r for ||q|| <= r.
double ball_exit(const Vector& q, const Vector& u, double r) {
  const double uu = u.squaredNorm();
  const double b = q.dot(u);
  const double c = std::max(0.0, r * r - q.squaredNorm());
  const double root = std::sqrt(b * b + uu * c);
  return b <= 0.0 ? (-b + root) / uu : c / (b + root);
}

// Smallest t in [lo, hi] with inside(t) true, inside monotone.
template <class Pred>
double bisect(double lo, double hi, Pred inside) {
  for (int it = 0; it < 400 && hi - lo > kBisectionTolerance * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (inside(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ConvexBody::ConvexBody(std::variant<Ball, Ellipsoid, PNormBall, Polytope> shape, Vector center)
    : shape_(std::move(shape)), center_(std::move(center)) {}

ConvexBody ConvexBody::ball(double radius, Vector center) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ArgumentError("ball: radius must be positive");
  if (center.size() < 2) throw ArgumentError("ball: dimension must be at least 2");
  return ConvexBody(Ball{radius}, std::move(center));
}

ConvexBody ConvexBody::ellipsoid(Vector axes, Vector center, std::optional<Matrix> rotation) {
  const Eigen::Index d = axes.size();
  if (d < 2 || center.size() != d) throw ArgumentError("ellipsoid: axes and center must share dimension >= 2");
  if (!(axes.minCoeff() > 0.0)) throw ArgumentError("ellipsoid: semi-axes must be positive");
  Matrix rot = rotation.value_or(Matrix::Identity(d, d));
  if (rot.rows() != d || rot.cols() != d) throw ArgumentError("ellipsoid: rotation has wrong shape");
  if (!(rot.transpose() * rot).isApprox(Matrix::Identity(d, d), 1e-10))
    throw ArgumentError("ellipsoid: rotation must be orthonormal");
  ConvexBody body(Ellipsoid{axes, rot}, std::move(center));
  body.linear_ = rot * axes.asDiagonal();
  body.inverse_ = axes.cwiseInverse().asDiagonal() * rot.transpose();
  return body;
}

ConvexBody ConvexBody::pnorm_ball(double p, double scale, Vector center) {
  if (!(p > 1.0) || !std::isfinite(p)) throw ArgumentError("pnorm ball: exponent must lie in (1, inf)");
  if (!(scale > 0.0)) throw ArgumentError("pnorm ball: scale must be positive");
  if (center.size() < 2) throw ArgumentError("pnorm ball: dimension must be at least 2");
  return ConvexBody(PNormBall{p, scale}, std::move(center));
}

ConvexBody ConvexBody::polytope(std::vector<Vector> vertices) {
  if (vertices.empty()) throw ArgumentError("polytope: empty vertex list");
  const Eigen::Index d = vertices.front().size();
  if (d != 2 && d != 3) throw UnsupportedKindError("polytope: only d = 2 and d = 3 are supported");
  auto hull = std::make_shared<const TaggedPolytope>(convex_hull(std::span<const Vector>(vertices)));
  if (!(hull->volume() > 0.0)) throw DomainError("polytope: vertex list is not full-dimensional");
  Vector centroid = Vector::Zero(d);
  for (const auto& v : hull->vertices()) centroid += v.point;
  centroid /= static_cast<double>(hull->vertices().size());
  ConvexBody body(Polytope{std::move(vertices)}, std::move(centroid));
  body.hull_ = std::move(hull);
  return body;
}

BodyKind ConvexBody::kind() const { return static_cast<BodyKind>(shape_.index()); }

const TaggedPolytope& ConvexBody::polytope_hull() const {
  if (!hull_) throw UnsupportedKindError("polytope_hull: body is not a polytope");
  return *hull_;
}

bool ConvexBody::origin_symmetric() const {
  if (const auto* poly = as_polytope()) {
    const auto& verts = hull_->vertices();
    double scale = 0.0;
    for (const auto& v : verts) scale = std::max(scale, v.point.norm());
    for (const auto& v : verts) {
      const bool mirrored = std::any_of(verts.begin(), verts.end(), [&](const TaggedPoint& w) {
        return (w.point + v.point).norm() <= 1e-12 * scale;
      });
      if (!mirrored) return false;
    }
    (void)poly;
    return true;
  }
  double size = 0.0;
  if (const auto* b = as_ball()) size = b->radius;
  if (const auto* e = as_ellipsoid()) size = e->axes.maxCoeff();
  if (const auto* q = as_pnorm_ball()) size = q->scale;
  return center_.norm() <= 1e-12 * size;
}

ConvexBody ConvexBody::translated(const Vector& shift) const {
  require_dim(*this, shift, "translated");
  if (const auto* poly = as_polytope()) {
    std::vector<Vector> moved;
    moved.reserve(poly->vertices.size());
    for (const auto& v : poly->vertices) moved.push_back(v + shift);
    return polytope(std::move(moved));
  }
  ConvexBody copy = *this;
  copy.center_ += shift;
  return copy;
}

ConvexBody ConvexBody::reflected() const {
  if (const auto* poly = as_polytope()) {
    std::vector<Vector> flipped;
    flipped.reserve(poly->vertices.size());
    for (const auto& v : poly->vertices) flipped.push_back(-v);
    return polytope(std::move(flipped));
  }
  ConvexBody copy = *this;
  copy.center_ = -center_;
  return copy;
}

ConvexBody ConvexBody::scaled(double factor) const {
  if (!(factor > 0.0)) throw ArgumentError("scaled: factor must be positive");
  if (const auto* poly = as_polytope()) {
    std::vector<Vector> grown;
    grown.reserve(poly->vertices.size());
    for (const auto& v : poly->vertices) grown.push_back(factor * v);
    return polytope(std::move(grown));
  }
  if (const auto* b = as_ball()) return ball(b->radius * factor, factor * center_);
  if (const auto* e = as_ellipsoid()) return ellipsoid(factor * e->axes, factor * center_, e->rotation);
  const auto* q = as_pnorm_ball();
  return pnorm_ball(q->p, q->scale * factor, factor * center_);
}

double ConvexBody::volume() const {
  const int d = dim();
  if (const auto* b = as_ball()) return unit_ball_volume(d) * std::pow(b->radius, d);
  if (const auto* e = as_ellipsoid()) return unit_ball_volume(d) * e->axes.prod();
  if (const auto* q = as_pnorm_ball())
    return std::pow(2.0 * std::tgamma(1.0 + 1.0 / q->p), d) / std::tgamma(1.0 + d / q->p) * std::pow(q->scale, d);
  return hull_->volume();
}

bool ConvexBody::interior(const Vector& x) const {
  require_dim(*this, x, "interior");
  if (const auto* b = as_ball()) return (x - center_).norm() < b->radius;
  if (as_ellipsoid()) return (inverse_ * (x - center_)).norm() < 1.0;
  if (const auto* q = as_pnorm_ball()) return pnorm(x - center_, q->p) < q->scale;
  for (const auto& f : hull_->facets())
    if (!(f.normal.dot(x) < f.offset)) return false;
  return true;
}

double support(const ConvexBody& body, const Vector& u) {
  require_dim(body, u, "support");
  require_nonzero(u, "support");
  const Vector& c = body.center_;
  if (const auto* b = body.as_ball()) return u.dot(c) + b->radius * u.norm();
  if (body.as_ellipsoid()) return u.dot(c) + (body.linear_.transpose() * u).norm();
  if (const auto* q = body.as_pnorm_ball()) return u.dot(c) + q->scale * pnorm(u, q->p / (q->p - 1.0));
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& v : body.hull_->vertices()) best = std::max(best, u.dot(v.point));
  return best;
}

Vector support_point(const ConvexBody& body, const Vector& u) {
  require_dim(body, u, "support_point");
  require_nonzero(u, "support_point");
  const Vector& c = body.center_;
  if (const auto* b = body.as_ball()) return c + b->radius * u.normalized();
  if (body.as_ellipsoid()) {
    const Vector w = body.linear_.transpose() * u;
    return c + body.linear_ * (w / w.norm());
  }
  if (const auto* q = body.as_pnorm_ball()) {
    // Gradient of the dual q-norm.
    const double dual = q->p / (q->p - 1.0);
    const Vector v = u / u.cwiseAbs().maxCoeff();
    const double n = pnorm(v, dual);
    Vector g(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i)
      g[i] = std::copysign(std::pow(std::abs(v[i]) / n, dual - 1.0), v[i]);
    return c + q->scale * g;
  }
  throw UnsupportedKindError("support_point: polytope support sets need not be singletons");
}

double gauge(const ConvexBody& body, const Vector& x) {
  require_dim(body, x, "gauge");
  const Vector origin = Vector::Zero(body.dim());
  if (!body.interior(origin)) throw DomainError("gauge: origin is not an interior point of the body");
  if (x.norm() == 0.0) return 0.0;
  const Vector& c = body.center_;
  if (const auto* b = body.as_ball()) return ball_gauge(x, c, b->radius);
  if (body.as_ellipsoid()) return ball_gauge(body.inverse_ * x, body.inverse_ * c, 1.0);
  if (const auto* q = body.as_pnorm_ball()) {
    if (c.norm() == 0.0) return pnorm(x, q->p) / q->scale;
    auto inside = [&](double t) { return pnorm(x - t * c, q->p) <= t * q->scale; };
    double hi = pnorm(x, q->p) / q->scale;
    while (!inside(hi)) hi *= 2.0;
    return bisect(0.0, hi, inside);
  }
  double g = 0.0;
  for (const auto& f : body.hull_->facets()) g = std::max(g, f.normal.dot(x) / f.offset);
  return g;
}

double centered_gauge(const ConvexBody& body, const Vector& x) {
  require_dim(body, x, "centered_gauge");
  const Vector y = x - body.center_;
  if (const auto* b = body.as_ball()) return y.norm() / b->radius;
  if (body.as_ellipsoid()) return (body.inverse_ * y).norm();
  if (const auto* q = body.as_pnorm_ball()) return pnorm(y, q->p) / q->scale;
  double g = 0.0;
  for (const auto& f : body.hull_->facets()) g = std::max(g, f.normal.dot(y) / (f.offset - f.normal.dot(body.center_)));
  return g;
}

double ray_exit(const ConvexBody& body, const Vector& p, const Vector& u) {
  require_dim(body, p, "ray_exit");
  require_nonzero(u, "ray_exit");
  const Vector& c = body.center_;
  if (const auto* b = body.as_ball()) return ball_exit(p - c, u, b->radius);
  if (body.as_ellipsoid()) return ball_exit(body.inverse_ * (p - c), body.inverse_ * u, 1.0);
  if (const auto* q = body.as_pnorm_ball()) {
    auto outside = [&](double t) { return pnorm(p + t * u - c, q->p) > q->scale; };
    double hi = 2.0 * q->scale / u.norm();
    while (!outside(hi)) hi *= 2.0;
    return bisect(0.0, hi, outside);
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : body.hull_->facets()) {
    const double rate = f.normal.dot(u);
    if (rate > 0.0) best = std::min(best, (f.offset - f.normal.dot(p)) / rate);
  }
  return std::max(0.0, best);
}

Vector normal_at(const ConvexBody& body, const Vector& x, double tolerance) {
  require_dim(body, x, "normal_at");
  if (body.as_polytope()) throw UnsupportedKindError("normal_at: polytope normal cones are not one-dimensional");
  const Vector y = x - body.center_;
  double level = 0.0;
  Vector grad;
  if (const auto* b = body.as_ball()) {
    level = y.norm() / b->radius;
    grad = y;
  } else if (body.as_ellipsoid()) {
    const Vector z = body.inverse_ * y;
    level = z.norm();
    grad = body.inverse_.transpose() * z;
  } else {
    const auto* q = body.as_pnorm_ball();
    level = pnorm(y, q->p) / q->scale;
    const Vector v = y / y.cwiseAbs().maxCoeff();
    grad.resize(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) grad[i] = std::copysign(std::pow(std::abs(v[i]), q->p - 1.0), v[i]);
  }
  if (!(std::abs(level - 1.0) <= tolerance)) throw DomainError("normal_at: point is not on the boundary");
  return grad.normalized();
}

ConvexBody polytope_polar(const ConvexBody& polytope) {
  const auto* poly = polytope.as_polytope();
  if (!poly) throw UnsupportedKindError("polytope_polar: body is not a polytope");
  const auto& hull = polytope.polytope_hull();
  std::vector<Vector> dual;
  double scale = 0.0;
  for (const auto& v : hull.vertices()) scale = std::max(scale, v.point.norm());
  for (const auto& f : hull.merged_facets()) {
    if (!(f.offset > 1e-12 * scale)) throw DomainError("polytope_polar: origin is not an interior point");
    dual.push_back(f.normal / f.offset);
  }
  return ConvexBody::polytope(std::move(dual));
}

SurfaceMeasureSampler::SurfaceMeasureSampler(const ConvexBody& body)
    : body_(std::make_shared<const ConvexBody>(body.as_polytope() ? body : body.translated(-body.center()))),
      dim_(body.dim()) {
  const int d = dim_;
  if (const auto* poly = body.as_polytope()) {
    (void)poly;
    for (const auto& f : body.polytope_hull().merged_facets()) {
      if (f.area <= 0.0) continue;
      atoms_.push_back({f.normal, f.area});
      total_mass_ += f.area;
    }
    double acc = 0.0;
    for (const auto& a : atoms_) cumulative_.push_back(acc += a.weight);
    return;
  }
  if (const auto* b = body.as_ball()) {
    total_mass_ = unit_sphere_area(d) * std::pow(b->radius, d - 1);
    density_bound_ = std::pow(b->radius, d - 1);
    return;
  }
  if (d != 2 && d != 3) throw UnsupportedKindError("surface_sampler: smooth non-ball bodies need d in {2,3}");
  if (d == 2) {
    // Trapezoid rule on the periodic radial parametrization.
    constexpr std::size_t nodes = 1 << 14;
    double sum = 0.0;
    for (const auto& w : sphere_grid(2, nodes)) {
      const double g = density(w, nullptr);
      sum += g;
      density_bound_ = std::max(density_bound_, g);
    }
    total_mass_ = sum * 2.0 * std::numbers::pi / static_cast<double>(nodes);
  } else {
    for (const auto& w : sphere_grid(3, 20000)) density_bound_ = std::max(density_bound_, density(w, nullptr));
    Rng rng(0x5EEDF00DULL);
    constexpr std::size_t draws = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (std::size_t i = 0; i < draws; ++i) {
      const double g = density(random_direction(3, rng), nullptr);
      sum += g;
      sum2 += g * g;
    }
    const double mean = sum / draws;
    const double var = std::max(0.0, sum2 / draws - mean * mean);
    total_mass_ = unit_sphere_area(3) * mean;
    total_mass_error_ = unit_sphere_area(3) * std::sqrt(var / draws);
  }
  density_bound_ *= 1.2;
}

double SurfaceMeasureSampler::density(const Vector& direction, Vector* normal) const {
  const ConvexBody& body = *body_;
  const int d = dim_;
  if (const auto* b = body.as_ball()) {
    if (normal) *normal = direction;
    return std::pow(b->radius, d - 1);
  }
  // body_ is centered; boundary point rho * w has area element rho^{d-1} / <w, n> per unit solid angle.
  const double rho = 1.0 / gauge(body, direction);
  const Vector n = normal_at(body, rho * direction, 1e-7);
  if (normal) *normal = n;
  return std::pow(rho, d - 1) / direction.dot(n);
}

Vector SurfaceMeasureSampler::draw(Rng& rng) const {
  if (!atoms_.empty()) {
    std::uniform_real_distribution<double> pick(0.0, cumulative_.back());
    const double r = pick(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    const std::size_t k = std::min<std::size_t>(it - cumulative_.begin(), atoms_.size() - 1);
    return atoms_[k].normal;
  }
  if (body_->as_ball()) return random_direction(dim_, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector n;
  for (;;) {
    const Vector w = random_direction(dim_, rng);
    const double g = density(w, &n);
    if (unit(rng) * density_bound_ < g) return n;
  }
}

std::vector<SurfaceAtom> SurfaceMeasureSampler::discretize(std::size_t nodes) const {
  if (!atoms_.empty()) return atoms_;
  if (dim_ != 2 && dim_ != 3) throw UnsupportedKindError("discretize: only d = 2 and d = 3 are supported");
  std::vector<SurfaceAtom> out;
  out.reserve(nodes);
  const double cell = unit_sphere_area(dim_) / static_cast<double>(nodes);
  for (const auto& w : sphere_grid(dim_, nodes)) {
    SurfaceAtom a;
    a.weight = density(w, &a.normal) * cell;
    out.push_back(std::move(a));
  }
  return out;
}

SurfaceMeasureSampler surface_sampler(const ConvexBody& body) { return SurfaceMeasureSampler(body); }

PointSample uniform_sample(const ConvexBody& body, std::size_t n, Rng& rng) {
  const int d = body.dim();
  Vector lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    Vector e = Vector::Zero(d);
    e[i] = 1.0;
    hi[i] = support(body, e);
    lo[i] = -support(body, -e);
  }
  std::vector<std::uniform_real_distribution<double>> axis;
  for (int i = 0; i < d; ++i) axis.emplace_back(lo[i], hi[i]);
  PointSample out;
  out.reserve(n);
  Vector x(d);
  while (out.size() < n) {
    for (int i = 0; i < d; ++i) x[i] = axis[i](rng);
    if (body.interior(x)) out.push_back(x);
  }
  return out;
}

}  // namespace khull
