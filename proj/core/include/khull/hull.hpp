#pragma once

#include "khull/body.hpp"
#include "khull/general_position.hpp"

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace khull {

/// Classification thresholds for the planar arc pipeline.
struct ArcTolerances {
  double geometric = 1e-9;         // "on boundary" / "inside" slack
  double general_position = 1e-7;  // near tangency and near multiple incidence
};

/// X = K (-) A = intersection of the translates K - a, a in A, held
/// implicitly through oracles on K.
class IntersectionBody {
 public:
  /// Throws DomainError unless every sample point lies in Int K.
  IntersectionBody(ConvexBody base, PointSample sample);

  const ConvexBody& base() const { return base_; }
  const PointSample& sample() const { return sample_; }
  int dim() const { return base_.dim(); }

 private:
  ConvexBody base_;
  PointSample sample_;
};

/// x in K (-) A, i.e. a + x in K for every a in A.
bool mink_diff_contains(const ConvexBody& body, const PointSample& sample, const Vector& x, double tolerance = 1e-12);

struct RadialHit {
  double radius = 0.0;
  std::size_t owner = 0;  // sample index whose translate is hit first
};

/// Radial function of X in direction u together with the binding sample point.
RadialHit radial_hit(const IntersectionBody& body, const Vector& u);
double radial(const IntersectionBody& body, const Vector& u);

/// min_i h(K - a_i, u), an upper bound for h(X, u).
double outer_support_bound(const IntersectionBody& body, const Vector& u);

enum class Membership { In, Out, Unknown };

struct MembershipVerdict {
  Membership verdict = Membership::Unknown;
  double gap = 0.0;  // Out: violation found; Unknown: unresolved margin
};

/// Certified test of z in bh_K(sample), using z in bh_K(A) <=> X + z in K.
/// `resolution` is the number of probe directions.
MembershipVerdict khull_contains(const ConvexBody& body, const PointSample& sample, const Vector& z,
                                 std::size_t resolution);

/// One circular boundary piece, traversed counter clockwise from angle a0 to a1 > a0.
struct Arc {
  std::size_t owner = 0;
  Vector center;
  double radius = 0.0;
  double a0 = 0.0;
  double a1 = 0.0;
};

struct ArcVertex {
  std::array<std::size_t, 2> owners{};
  Vector point;
};

/// Boundary of an intersection of equal disks as a closed counter clockwise
/// cycle: arc k runs from vertex k to vertex k+1.
struct ArcBoundary {
  std::vector<Arc> arcs;
  std::vector<ArcVertex> vertices;
  /// Set when the region collapses to a point (K-hull of a single point).
  std::optional<Vector> singleton;
  /// Sample indices dropped as duplicates of an earlier point.
  std::vector<std::size_t> duplicates;
  GeneralPositionReport report;

  bool degenerate() const { return singleton.has_value(); }
  /// Distinct arc owners, sorted.
  std::vector<std::size_t> owners() const;
  double area() const;
  double perimeter() const;
  /// Point at parameter s in [0,1] along arc k.
  Vector point_on_arc(std::size_t k, double s) const;
};

/// Boundary of the intersection of disks of common radius centered at `centers`.
/// Owners are indices into `centers`.
ArcBoundary intersect_equal_disks(std::span<const Vector> centers, double radius, const ArcTolerances& tol = {});

/// Exact boundary of X = K (-) sample for a disk K in the plane.
ArcBoundary disk_intersection_boundary(const ConvexBody& disk, const PointSample& sample,
                                       const ArcTolerances& tol = {});

/// Exact boundary of the K-hull of the sample for a disk K: the intersection
/// of the translates K - v over the vertices v of X. Arc owners are vertex
/// indices of `x_boundary`.
ArcBoundary khull_boundary_2d(const ConvexBody& disk, const ArcBoundary& x_boundary, const ArcTolerances& tol = {});
ArcBoundary khull_boundary_2d(const ConvexBody& disk, const PointSample& sample, const ArcTolerances& tol = {});

}  // namespace khull
