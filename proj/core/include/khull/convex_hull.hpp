#pragma once

#include "khull/common.hpp"

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace khull {

/// A point carrying the index of the set (owner) it was generated from.
struct TaggedPoint {
  std::size_t owner = 0;
  Vector point;
};

/// Facet of a hull. In d = 2 this is an edge (two vertex indices, counter
/// clockwise); in d = 3 a triangle oriented counter clockwise seen from
/// outside. `normal` is the unit outer normal, the facet lies on
/// <normal, x> = offset.
struct HullFacet {
  std::vector<std::size_t> vertices;
  Vector normal;
  double offset = 0.0;
  std::vector<std::size_t> neighbors;  // neighbors[k] is across the edge starting at vertices[k]
};

/// A maximal coplanar patch of hull facets; the true facet of the polytope.
struct MergedFacet {
  std::vector<std::size_t> triangles;
  Vector normal;
  double offset = 0.0;
  double area = 0.0;
};

/// An edge of the polytope between two merged facets.
struct MergedEdge {
  std::array<std::size_t, 2> facets{};
  std::array<std::size_t, 2> endpoints{};
  double length = 0.0;
  double exterior_angle = 0.0;  // angle between the outer normals
};

/// Convex polytope in R^2 or R^3 whose vertices remember their owners.
/// Vertices are extreme points; facets are triangulated in d = 3.
class TaggedPolytope {
 public:
  TaggedPolytope() = default;
  TaggedPolytope(int dim, std::vector<TaggedPoint> vertices, std::vector<HullFacet> facets);

  int dim() const { return dim_; }
  const std::vector<TaggedPoint>& vertices() const { return vertices_; }
  const std::vector<HullFacet>& facets() const { return facets_; }

  /// Unique vertex pairs joined by a facet boundary (d = 3: triangle edges).
  std::vector<std::array<std::size_t, 2>> edges() const;

  double volume() const;
  /// Perimeter in d = 2, surface area in d = 3.
  double surface_area() const;

  /// Smallest facet offset; positive iff the origin is interior.
  double min_offset() const;

  /// Signed distance to the boundary as max over facets of <n,x> - offset.
  double facet_excess(const Vector& x) const;

  /// Coplanar facets merged (identity in d = 2).
  std::vector<MergedFacet> merged_facets() const;
  std::vector<MergedEdge> merged_edges() const;

  /// Face counts (f_0, ..., f_{d-1}) of the polytope after merging
  /// coplanar triangles. Vertices lying inside a merged edge or facet are
  /// not counted.
  std::vector<long> f_vector() const;

  /// Euclidean distance from x to the polytope (0 inside).
  double distance(const Vector& x) const;

 private:
  std::vector<std::size_t> merged_labels() const;

  int dim_ = 0;
  std::vector<TaggedPoint> vertices_;
  std::vector<HullFacet> facets_;
};

/// Convex hull in d in {2,3}. Throws DomainError for affinely degenerate input.
TaggedPolytope convex_hull(std::span<const TaggedPoint> points);

/// Convex hull of plain points; owners are the input indices.
TaggedPolytope convex_hull(std::span<const Vector> points);

/// Indices of the extreme points of a point set (d in {2,3}). Input that is
/// not full-dimensional returns every index.
std::vector<std::size_t> extreme_point_indices(std::span<const Vector> points);

}  // namespace khull
