#pragma once

#include "khull/body.hpp"
#include "khull/convex_hull.hpp"
#include "khull/general_position.hpp"
#include "khull/hull.hpp"

#include <span>
#include <vector>

namespace khull {

/// Face counts (f_0, ..., f_{d-1}) of a family of convex sets: f_k is the
/// number of distinct (k+1)-element subfamilies that share a k-face of the
/// convex hull of the family.
struct FVector {
  std::vector<long> counts;
  /// Produced from polytopal approximations rather than exact boundaries.
  bool approximate = false;

  long operator[](std::size_t k) const { return counts.at(k); }
  std::size_t size() const { return counts.size(); }
  bool operator==(const FVector& other) const { return counts == other.counts; }
};

/// f_k <= C(f_0, k+1) for every k.
bool satisfies_combinatorial_bound(const FVector& f);

/// Family f-vector of the polar family of a planar disk sample, read off the
/// exact arc boundary of X: f_0 = distinct arc owners, f_1 = distinct owner
/// pairs at vertices. Throws GeneralPositionError when the report is not ok.
FVector fvector_exact_2d(const ArcBoundary& x_boundary);

/// Points of one member of a family, tagged with the member index.
struct OwnedCloud {
  std::size_t owner = 0;
  std::vector<Vector> points;
};

/// Inscribed polytopal approximations of the polars (K - a)^o, a in sample.
/// Vertex j of every member lies on the shared direction w_j at radius
/// 1 / h(K - a, w_j).
std::vector<OwnedCloud> polar_family(const ConvexBody& body, const PointSample& sample, std::size_t directions);

/// Convex hull of the union of the clouds with owner tags kept.
TaggedPolytope owner_tagged_hull(std::span<const OwnedCloud> family);

/// Family f-vector of an owner-tagged hull, counting owner sets without
/// multiplicity. Approximate unless each owner contributes a single point.
FVector fvector_from_tagged_hull(const TaggedPolytope& hull);

/// Usual f-vector of conv(points), d in {2,3}.
FVector polytope_fvector(std::span<const Vector> points);

/// Detects numerical near-failures of general position for the polar family
/// of a disk sample: coincident points, near-tangent circle pairs, and
/// three or more points on a common translate boundary of K containing the sample.
GeneralPositionReport general_position_check_2d(const ConvexBody& disk, const PointSample& sample,
                                                double tolerance = 1e-7);

/// Number of K-facets of the K-hull of a disk sample (arcs of its boundary)
/// together with the family f-vector; the two may differ (two points give
/// f = (2,1) but two K-facets).
struct KFacetCount {
  long kfacets = 0;
  FVector fvector;
};

KFacetCount kfacet_count_2d(const ConvexBody& disk, const PointSample& sample);

}  // namespace khull
