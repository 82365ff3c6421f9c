#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace khull {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// The random engine used by every stochastic routine. Streams are derived
/// per replicate with derive_seed() so results do not depend on scheduling.
using Rng = std::mt19937_64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input (zero direction, non-positive radius, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A geometric precondition failed (point not interior, degenerate body, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this kind of body.
class UnsupportedKindError : public Error {
 public:
  using Error::Error;
};

/// Volume of the j-dimensional unit ball.
inline double unit_ball_volume(int j) {
  return std::pow(std::numbers::pi, 0.5 * j) / std::tgamma(1.0 + 0.5 * j);
}

/// Surface area of the unit sphere in R^d, d * kappa_d.
inline double unit_sphere_area(int d) { return d * unit_ball_volume(d); }

/// SplitMix64 finalizer; used to derive independent per-replicate seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

/// Uniform direction on the unit sphere in R^d.
inline Vector random_direction(int d, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector u(d);
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) u[i] = normal(rng);
    norm = u.norm();
  } while (norm < 1e-300);
  return u / norm;
}

inline Vector vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

inline Vector vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

/// Deterministic nearly uniform point set on the sphere: equally spaced
/// angles for d = 2, a Fibonacci lattice for d = 3.
std::vector<Vector> sphere_grid(int d, std::size_t count);

}  // namespace khull
