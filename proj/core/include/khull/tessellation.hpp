#pragma once

#include "khull/body.hpp"
#include "khull/convex_hull.hpp"
#include "khull/faces.hpp"
#include "khull/hull.hpp"

#include <vector>

namespace khull {

/// Half-space {x : <x, normal> <= distance} containing the origin.
struct Hyperplane {
  double distance = 0.0;
  Vector normal;
};

/// Points of the Poisson process with intensity dt x S_{d-1}(K,du) / V_d(K)
/// restricted to distances in (lower, truncation].
struct HyperplaneSample {
  std::vector<Hyperplane> items;
  double lower = 0.0;
  double truncation = 0.0;
  double rate = 0.0;  // expected hyperplanes per unit of distance
};

/// Directional law and rate of the hyperplane process generated by K.
class HyperplaneProcess {
 public:
  explicit HyperplaneProcess(const ConvexBody& body);

  int dim() const { return sampler_.dim(); }
  /// S_{d-1}(K, sphere) / V_d(K).
  double rate() const { return rate_; }
  const SurfaceMeasureSampler& directions() const { return sampler_; }

  HyperplaneSample sample(double lower, double upper, Rng& rng) const;

 private:
  SurfaceMeasureSampler sampler_;
  double rate_ = 0.0;
};

HyperplaneSample sample_hyperplanes(const ConvexBody& body, double truncation, Rng& rng);

/// Zero cell Z of the tessellation together with its polar Z^o = conv(Pi_K).
struct ZeroCell {
  TaggedPolytope dual;  // owners index `hyperplanes`
  TaggedPolytope cell;  // owners index merged facets of `dual`
  std::vector<Hyperplane> hyperplanes;
  FVector dual_fvector;
  FVector cell_fvector;  // reversal of dual_fvector
  bool certified = false;
  double truncation = 0.0;
  int layers = 0;
};

/// Layered simulation: hyperplanes with distance up to T are drawn, Z is
/// recovered from the facets of conv{u/t}, and the window doubles (with
/// fresh hyperplanes in (T, 2T]) until every vertex of Z lies within
/// distance T, which certifies that no further hyperplane can cut Z.
ZeroCell zero_cell(const HyperplaneProcess& process, Rng& rng, double initial_truncation);
ZeroCell zero_cell(const ConvexBody& body, Rng& rng, double initial_truncation);

/// (V_0, ..., V_d), V_j in length^j.
struct IntrinsicVolumes {
  std::vector<double> values;
  double operator[](std::size_t j) const { return values.at(j); }
};

/// Intrinsic volumes of a polytope: (1, perimeter/2, area) in the plane,
/// (1, sum of edge length times exterior angle / 2 pi, surface/2, volume) in space.
IntrinsicVolumes intrinsic_volumes(const TaggedPolytope& polytope);

/// Exact intrinsic volumes of a planar region bounded by circular arcs.
IntrinsicVolumes intrinsic_volumes(const ArcBoundary& boundary);

/// V_j(c L) = c^j V_j(L).
IntrinsicVolumes scale_intrinsic_volumes(const IntrinsicVolumes& v, double factor);

struct ScaledStatisticsOptions {
  std::size_t radial_directions = 0;  // 0: 512 in the plane, 2048 in space
  std::size_t polar_directions = 256;
};

/// One replicate of the sample-hull statistics compared against the zero cell.
struct SampleStatistics {
  IntrinsicVolumes scaled_volumes;  // of n X_n
  double volume_gap = 0.0;          // outer minus inner d-volume of n X_n (0 when exact)
  FVector fvector;                  // of Q_n
  long kfacets = -1;                // planar disk case only
  bool general_position = true;
  std::size_t candidates = 0;       // sample points that can bind X_n
};

/// Planar disks use the exact arc pipeline; other bodies use radial probes
/// for n X_n and the owner-tagged polar hull for the f-vector of Q_n.
SampleStatistics scaled_sample_statistics(const ConvexBody& body, std::size_t n, Rng& rng,
                                          const ScaledStatisticsOptions& options = {});

}  // namespace khull
