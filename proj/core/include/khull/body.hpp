#pragma once

#include "khull/common.hpp"
#include "khull/convex_hull.hpp"

#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace khull {

struct Ball {
  double radius = 1.0;
};

/// center + rotation * diag(axes) * unit ball.
struct Ellipsoid {
  Vector axes;
  Matrix rotation;
};

/// center + scale * { x : ||x||_p <= 1 }.
struct PNormBall {
  double p = 2.0;
  double scale = 1.0;
};

/// Convex hull of the vertex list; facets are derived at construction.
struct Polytope {
  std::vector<Vector> vertices;
};

enum class BodyKind { Ball, Ellipsoid, PNormBall, Polytope };

/// A convex body in R^d given in closed form. Smooth kinds (ball, ellipsoid,
/// p-norm ball) are strictly convex and regular; polytopes are neither.
///
/// Translation and reflection keep the kind. Gauge and polar computations
/// are relative to the origin and require it to be an interior point.
class ConvexBody {
 public:
  static ConvexBody ball(double radius, Vector center);
  static ConvexBody ellipsoid(Vector axes, Vector center, std::optional<Matrix> rotation = std::nullopt);
  static ConvexBody pnorm_ball(double p, double scale, Vector center);
  static ConvexBody polytope(std::vector<Vector> vertices);

  BodyKind kind() const;
  int dim() const { return static_cast<int>(center_.size()); }
  /// Translation offset for smooth kinds, vertex centroid for polytopes.
  const Vector& center() const { return center_; }

  const Ball* as_ball() const { return std::get_if<Ball>(&shape_); }
  const Ellipsoid* as_ellipsoid() const { return std::get_if<Ellipsoid>(&shape_); }
  const PNormBall* as_pnorm_ball() const { return std::get_if<PNormBall>(&shape_); }
  const Polytope* as_polytope() const { return std::get_if<Polytope>(&shape_); }

  /// Facet description of a polytope body.
  const TaggedPolytope& polytope_hull() const;

  bool strictly_convex() const { return kind() != BodyKind::Polytope; }
  /// K = -K (up to 1e-12 for polytope vertex sets).
  bool origin_symmetric() const;

  ConvexBody translated(const Vector& shift) const;
  /// The reflection -K.
  ConvexBody reflected() const;
  /// The dilation c K about the origin, c > 0.
  ConvexBody scaled(double factor) const;

  double volume() const;

  /// Strict interior test, independent of where the origin is.
  bool interior(const Vector& x) const;

 private:
  ConvexBody(std::variant<Ball, Ellipsoid, PNormBall, Polytope> shape, Vector center);

  std::variant<Ball, Ellipsoid, PNormBall, Polytope> shape_;
  Vector center_;
  // Ellipsoid: rotation * diag(axes) and its inverse.
  Matrix linear_;
  Matrix inverse_;
  std::shared_ptr<const TaggedPolytope> hull_;

  friend double support(const ConvexBody&, const Vector&);
  friend Vector support_point(const ConvexBody&, const Vector&);
  friend double gauge(const ConvexBody&, const Vector&);
  friend double centered_gauge(const ConvexBody&, const Vector&);
  friend double ray_exit(const ConvexBody&, const Vector&, const Vector&);
  friend Vector normal_at(const ConvexBody&, const Vector&, double);
};

/// h(K,u) = sup <u,x> over K. Throws ArgumentError for u = 0.
double support(const ConvexBody& body, const Vector& u);

/// The unique maximizer of <u,x> over a strictly convex body.
Vector support_point(const ConvexBody& body, const Vector& u);

/// Minkowski functional min{t >= 0 : x in tK}; needs the origin in Int K.
double gauge(const ConvexBody& body, const Vector& x);

/// Gauge of K - center evaluated at x - center. At most 1 exactly on K,
/// with no requirement on where the origin lies.
double centered_gauge(const ConvexBody& body, const Vector& x);

/// sup{t >= 0 : p + t u in K} for p in K.
double ray_exit(const ConvexBody& body, const Vector& p, const Vector& u);

/// Unit outer normal at a boundary point of a strictly convex body.
/// `tolerance` bounds |gauge(body - center, x - center) - 1|.
Vector normal_at(const ConvexBody& body, const Vector& x, double tolerance = 1e-9);

/// Polar body of a polytope containing the origin in its interior.
ConvexBody polytope_polar(const ConvexBody& polytope);

/// Weighted direction on the sphere; one atom of a discretized surface area measure.
struct SurfaceAtom {
  Vector normal;
  double weight = 0.0;
};

/// Sampler for the normalized surface area measure S_{d-1}(K, .) / total_mass.
class SurfaceMeasureSampler {
 public:
  explicit SurfaceMeasureSampler(const ConvexBody& body);

  int dim() const { return dim_; }
  double total_mass() const { return total_mass_; }
  /// Monte Carlo standard error of total_mass (0 when exact or deterministic).
  double total_mass_error() const { return total_mass_error_; }
  /// Atoms of the measure for polytopes; empty otherwise.
  const std::vector<SurfaceAtom>& atoms() const { return atoms_; }

  Vector draw(Rng& rng) const;

  /// Deterministic weighted discretization of S_{d-1}(K,.) with about
  /// `nodes` atoms (exact for polytopes).
  std::vector<SurfaceAtom> discretize(std::size_t nodes) const;

 private:
  double density(const Vector& direction, Vector* normal) const;

  std::shared_ptr<const ConvexBody> body_;
  int dim_ = 0;
  double total_mass_ = 0.0;
  double total_mass_error_ = 0.0;
  double density_bound_ = 0.0;
  std::vector<SurfaceAtom> atoms_;
  std::vector<double> cumulative_;
};

SurfaceMeasureSampler surface_sampler(const ConvexBody& body);

using PointSample = std::vector<Vector>;

/// n i.i.d. uniform points in Int K by rejection from the bounding box.
PointSample uniform_sample(const ConvexBody& body, std::size_t n, Rng& rng);

}  // namespace khull
