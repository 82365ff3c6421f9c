#include "khull/common.hpp"

namespace khull {

std::vector<Vector> sphere_grid(int d, std::size_t count) {
  std::vector<Vector> out;
  out.reserve(count);
  if (d == 2) {
    for (std::size_t j = 0; j < count; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
      out.push_back(vec2(std::cos(phi), std::sin(phi)));
    }
    return out;
  }
  if (d == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t j = 0; j < count; ++j) {
      const double z = 1.0 - (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(count);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(j);
      out.push_back(vec3(r * std::cos(phi), r * std::sin(phi), z));
    }
    return out;
  }
  throw UnsupportedKindError("sphere_grid: only d = 2 and d = 3 are supported");
}

}  // namespace khull
