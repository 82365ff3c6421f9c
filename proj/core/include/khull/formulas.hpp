#pragma once

#include "khull/body.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace khull {

struct QuadratureSpec {
  enum class ErrorMode { ReportSE, FailAbove };

  std::size_t sphere_nodes = 0;        // 0: 4096 in the plane, 20000 in space
  std::size_t inner_samples = 100000;  // direction tuples for J
  std::size_t directions_per_sample = 4;  // space only: outer directions paired with each tuple
  std::uint64_t seed = 0x5EED;
  ErrorMode error_mode = ErrorMode::ReportSE;
  double tolerance = 0.0;  // FailAbove: throw if the standard error exceeds it
};

struct ExpectationEstimate {
  enum class Method { ClosedForm, Quadrature, MonteCarlo };

  double value = 0.0;
  double standard_error = 0.0;
  Method method = Method::Quadrature;
};

std::string to_string(ExpectationEstimate::Method method);

/// Support function of the projection body,
/// h(PK, x) = 1/2 int |<x,u>| S_{d-1}(K, du).
/// Closed form for balls and ellipsoids (P(AB) = |det A| A^{-T} PB), finite
/// sum for polytopes, deterministic discretization of the surface measure
/// for p-norm balls. The discretization is built once per object.
class ProjectionBody {
 public:
  explicit ProjectionBody(const ConvexBody& body, std::size_t nodes = 0);

  int dim() const { return dim_; }
  double support(const Vector& x) const;

 private:
  int dim_ = 0;
  double factor_ = 0.0;
  Matrix inverse_;  // empty unless the body is an ellipsoid
  bool linear_ = false;
  std::vector<SurfaceAtom> atoms_;
};

double projection_body_support(const ConvexBody& body, const Vector& x);

/// (1/d) int h(u)^{-d} du over the sphere, the volume of the polar of the
/// body with support h. Trapezoid rule on `nodes` angles in the plane,
/// equal weights on a Fibonacci lattice in space.
double volume_polar_radial(const std::function<double(const Vector&)>& support, int d, std::size_t nodes);

/// Volume of the body with support h, from the same nodes: the radial
/// function min_w h(w)/<u,w> integrated by the trapezoid rule in the plane,
/// the circumscribed polytope of the node halfspaces in space.
double volume_from_support(const std::function<double(const Vector&)>& support, int d, std::size_t nodes);

/// E f_0(Z) = 2^{-d} d! V(PK) V((PK)^o) for origin symmetric K.
ExpectationEstimate ef0_symmetric(const ConvexBody& body, const QuadratureSpec& spec = {});

/// J(x) = int |det[v_1..v_d]| 1{<v_i,x> >= 0} S(dv_1)...S(dv_d), by Monte
/// Carlo over the normalized surface measure of V_d(K) = 1 rescaled K.
ExpectationEstimate inner_j(const ConvexBody& body, const Vector& x, std::size_t samples, Rng& rng);

/// E f_0(Z) = (1/d) int h(PK,x)^{-d} J(x) dx for arbitrary K, evaluated
/// after rescaling K to unit volume. One draw of direction tuples is shared
/// by all outer nodes.
ExpectationEstimate ef0_general(const ConvexBody& body, const QuadratureSpec& spec, Rng& rng);
ExpectationEstimate ef0_general(const ConvexBody& body, const QuadratureSpec& spec = {});

}  // namespace khull
