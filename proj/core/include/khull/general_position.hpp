#pragma once

#include "khull/common.hpp"

#include <string>
#include <vector>

namespace khull {

/// Near-failure of general position: three or more members meeting at a
/// single boundary point, two supporting circles close to tangency, or
/// coinciding sample points.
struct GeneralPositionViolation {
  enum class Kind { Coincident, NearTangent, MultipleIncidence };
  Kind kind = Kind::MultipleIncidence;
  Vector witness;                    // translate x where the incidence happens
  std::vector<std::size_t> indices;  // sample indices involved
  int normal_cone_dim = 0;           // dimension found (expected <= number of members - 1)
  double margin = 0.0;               // how close to degenerate
};

struct GeneralPositionReport {
  bool ok = true;
  std::vector<GeneralPositionViolation> violations;

  void add(GeneralPositionViolation v) {
    violations.push_back(std::move(v));
    ok = false;
  }
};

std::string to_string(GeneralPositionViolation::Kind kind);

/// Thrown by operations that require a general-position family.
class GeneralPositionError : public Error {
 public:
  explicit GeneralPositionError(GeneralPositionReport report)
      : Error("family is not in general position (" + std::to_string(report.violations.size()) + " violations)"),
        report_(std::move(report)) {}
  const GeneralPositionReport& report() const { return report_; }

 private:
  GeneralPositionReport report_;
};

}  // namespace khull
