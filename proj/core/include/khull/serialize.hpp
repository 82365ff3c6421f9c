#pragma once

#include "khull/body.hpp"
#include "khull/convex_hull.hpp"
#include "khull/faces.hpp"
#include "khull/formulas.hpp"
#include "khull/general_position.hpp"
#include "khull/hull.hpp"

#include <string>
#include <string_view>

namespace khull {

/// Malformed configuration or body description.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Shortest decimal string that parses back to the same double.
std::string format_real(double x);

/// Parses the body grammar, e.g. {"kind":"ball","r":1,"center":[0,0]}.
/// Throws ConfigError on malformed input.
ConvexBody body_from_json(std::string_view text);
std::string body_to_json(const ConvexBody& body);

/// {"arcs":[{"owner","center","radius","a0","a1"}],"vertices":[{"owners","point"}],...}
std::string to_json(const ArcBoundary& boundary);
std::string to_json(const FVector& f);
std::string to_json(const GeneralPositionReport& report);
std::string to_json(const ExpectationEstimate& e);

/// OFF-like polytope dump. Planar polytopes get z = 0 and one polygon face.
/// Each vertex line carries its owner as a trailing comment.
std::string to_off(const TaggedPolytope& polytope);

}  // namespace khull
