#pragma once

// Reference computations that do not go through the library's own geometry.

#include "khull/common.hpp"
#include "khull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using khull::Vector;
using khull::vec2;

inline constexpr double pi = std::numbers::pi;

/// Composite Simpson rule on [a,b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

/// Perimeter of the ellipse with semi-axes a, b.
inline double ellipse_perimeter(double a, double b) {
  return simpson([&](double t) { return std::hypot(a * std::sin(t), b * std::cos(t)); }, 0.0, 2.0 * pi);
}

/// Brute force max of <u, x> over a parametrized closed planar curve.
inline double curve_support(const std::function<Vector(double)>& curve, const Vector& u, int samples = 200000) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) best = std::max(best, u.dot(curve(2.0 * pi * i / samples)));
  return best;
}

/// Maximizer of <u, x> over a parametrized curve, refined by golden section.
inline Vector curve_argmax(const std::function<Vector(double)>& curve, const Vector& u, int samples = 100000) {
  int arg = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double v = u.dot(curve(2.0 * pi * i / samples));
    if (v > best) best = v, arg = i;
  }
  double lo = 2.0 * pi * (arg - 1) / samples, hi = 2.0 * pi * (arg + 1) / samples;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (u.dot(curve(m1)) < u.dot(curve(m2)))
      lo = m1;
    else
      hi = m2;
  }
  return curve(0.5 * (lo + hi));
}

/// Gauge of a convex polygon given by counter clockwise vertices around the
/// origin: the largest <n_e, x> / b_e over its edge lines.
inline double polygon_gauge(const std::vector<Vector>& ccw, const Vector& x) {
  double g = 0.0;
  for (std::size_t i = 0; i < ccw.size(); ++i) {
    const Vector& p = ccw[i];
    const Vector& q = ccw[(i + 1) % ccw.size()];
    const Vector n = vec2(q[1] - p[1], p[0] - q[0]);
    g = std::max(g, n.dot(x) / n.dot(p));
  }
  return g;
}

/// Vertices of the polygon {x : <a_i, x> <= 1} by pairwise line intersection.
inline std::vector<Vector> halfplane_vertices(const std::vector<Vector>& a) {
  std::vector<Vector> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const double det = a[i][0] * a[j][1] - a[i][1] * a[j][0];
      if (std::abs(det) < 1e-14) continue;
      const Vector x = vec2((a[j][1] - a[i][1]) / det, (a[i][0] - a[j][0]) / det);
      bool inside = true;
      for (const auto& ak : a) inside = inside && ak.dot(x) <= 1.0 + 1e-12;
      if (!inside) continue;
      bool dup = false;
      for (const auto& y : out) dup = dup || (y - x).norm() < 1e-12;
      if (!dup) out.push_back(x);
    }
  return out;
}

/// The two intersection points of the circles |x - c1| = r, |x - c2| = r.
inline std::pair<Vector, Vector> circle_pair(const Vector& c1, const Vector& c2, double r) {
  const Vector mid = 0.5 * (c1 + c2);
  const Vector d = c2 - c1;
  const double half = 0.5 * d.norm();
  const double h = std::sqrt(r * r - half * half);
  const Vector perp = vec2(-d[1], d[0]) / d.norm();
  return {mid + h * perp, mid - h * perp};
}

/// Largest distance from p to a region bounded by circular arcs.
inline double farthest_distance(const khull::ArcBoundary& region, const Vector& p) {
  if (region.singleton) return (*region.singleton - p).norm();
  double best = 0.0;
  for (const auto& arc : region.arcs) {
    best = std::max(best, (arc.center + arc.radius * vec2(std::cos(arc.a0), std::sin(arc.a0)) - p).norm());
    best = std::max(best, (arc.center + arc.radius * vec2(std::cos(arc.a1), std::sin(arc.a1)) - p).norm());
    const Vector away = arc.center - p;
    if (away.norm() == 0.0) {
      best = std::max(best, arc.radius);
      continue;
    }
    double t = std::atan2(away[1], away[0]);
    while (t < arc.a0) t += 2.0 * pi;
    while (t > arc.a0 + 2.0 * pi) t -= 2.0 * pi;
    if (t <= arc.a1) best = std::max(best, away.norm() + arc.radius);
  }
  return best;
}

/// Signed membership margin of p in an intersection of disks described by
/// its arcs: max over arcs of |p - center| - radius (negative inside).
inline double arc_region_excess(const khull::ArcBoundary& region, const Vector& p) {
  if (region.singleton) return (*region.singleton - p).norm();
  double e = -std::numeric_limits<double>::infinity();
  for (const auto& arc : region.arcs) e = std::max(e, (p - arc.center).norm() - arc.radius);
  return e;
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

struct MeanSE {
  double mean = 0.0, se = 0.0;
};

inline MeanSE mean_se(const std::vector<double>& x) {
  MeanSE r;
  for (double v : x) r.mean += v;
  r.mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - r.mean) * (v - r.mean);
  r.se = std::sqrt(ss / (static_cast<double>(x.size()) - 1.0) / static_cast<double>(x.size()));
  return r;
}

/// |a - b| <= k * sqrt(se_a^2 + se_b^2).
inline bool within_se(double a, double se_a, double b, double se_b, double k = 3.0) {
  return std::abs(a - b) <= k * std::sqrt(se_a * se_a + se_b * se_b);
}

}  // namespace oracle
