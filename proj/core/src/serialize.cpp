#include "khull/serialize.hpp"

#include <charconv>
#include <sstream>

#include "json.hpp"

namespace khull {

using nlohmann::json;

namespace {

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector json_vector(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string("body: '") + what + "' must be a nonempty array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ConfigError(std::string("body: '") + what + "' must contain numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

double json_real(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) throw ConfigError(std::string("body: '") + key + "' must be a number");
  return j[key].get<double>();
}

Vector body_center(const json& j, int fallback_dim) {
  if (j.contains("center")) return json_vector(j["center"], "center");
  int d = fallback_dim;
  if (j.contains("dim")) {
    if (!j["dim"].is_number_integer()) throw ConfigError("body: 'dim' must be an integer");
    d = j["dim"].get<int>();
  }
  if (d < 1) throw ConfigError("body: 'dim' must be positive");
  return Vector::Zero(d);
}

json boundary_json(const ArcBoundary& b) {
  json arcs = json::array();
  for (const auto& a : b.arcs)
    arcs.push_back({{"owner", a.owner}, {"center", vector_json(a.center)}, {"radius", a.radius}, {"a0", a.a0}, {"a1", a.a1}});
  json verts = json::array();
  for (const auto& v : b.vertices)
    verts.push_back({{"owners", {v.owners[0], v.owners[1]}}, {"point", vector_json(v.point)}});
  json out{{"arcs", arcs}, {"vertices", verts}};
  if (b.singleton) out["singleton"] = vector_json(*b.singleton);
  return out;
}

json report_json(const GeneralPositionReport& r) {
  json vs = json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"kind", to_string(v.kind)},
                  {"witness", vector_json(v.witness)},
                  {"indices", v.indices},
                  {"normal_cone_dim", v.normal_cone_dim},
                  {"margin", v.margin}});
  return {{"ok", r.ok}, {"violations", vs}};
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ConvexBody body_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("body: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ConfigError("body: expected an object with a string 'kind' (ball, ellipsoid, pball, polytope)");
  const std::string kind = j["kind"].get<std::string>();
  try {
    if (kind == "ball") return ConvexBody::ball(json_real(j, "r", 1.0), body_center(j, 2));
    if (kind == "ellipsoid") {
      if (!j.contains("axes")) throw ConfigError("body: ellipsoid needs 'axes'");
      Vector axes = json_vector(j["axes"], "axes");
      Vector center = j.contains("center") ? json_vector(j["center"], "center") : Vector::Zero(axes.size());
      std::optional<Matrix> rotation;
      if (j.contains("rotation")) {
        const json& r = j["rotation"];
        if (!r.is_array() || r.size() != static_cast<std::size_t>(axes.size()))
          throw ConfigError("body: 'rotation' must be a square matrix given as rows");
        Matrix m(axes.size(), axes.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
          const Vector row = json_vector(r[i], "rotation");
          if (row.size() != axes.size()) throw ConfigError("body: 'rotation' must be a square matrix given as rows");
          m.row(static_cast<Eigen::Index>(i)) = row.transpose();
        }
        rotation = m;
      }
      return ConvexBody::ellipsoid(std::move(axes), std::move(center), rotation);
    }
    if (kind == "pball")
      return ConvexBody::pnorm_ball(json_real(j, "p", 2.0), json_real(j, "scale", 1.0), body_center(j, 2));
    if (kind == "polytope") {
      if (!j.contains("vertices") || !j["vertices"].is_array())
        throw ConfigError("body: polytope needs 'vertices' as an array of points");
      std::vector<Vector> verts;
      for (const auto& v : j["vertices"]) verts.push_back(json_vector(v, "vertices"));
      return ConvexBody::polytope(std::move(verts));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("body: ") + e.what());
  }
  throw ConfigError("body: unknown kind '" + kind + "' (expected ball, ellipsoid, pball or polytope)");
}

std::string body_to_json(const ConvexBody& body) {
  json j;
  if (const auto* b = body.as_ball()) {
    j = {{"kind", "ball"}, {"r", b->radius}, {"center", vector_json(body.center())}};
  } else if (const auto* e = body.as_ellipsoid()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < e->rotation.rows(); ++i) rows.push_back(vector_json(e->rotation.row(i).transpose()));
    j = {{"kind", "ellipsoid"}, {"axes", vector_json(e->axes)}, {"rotation", rows}, {"center", vector_json(body.center())}};
  } else if (const auto* q = body.as_pnorm_ball()) {
    j = {{"kind", "pball"}, {"p", q->p}, {"scale", q->scale}, {"center", vector_json(body.center())}};
  } else {
    json verts = json::array();
    for (const auto& v : body.as_polytope()->vertices) verts.push_back(vector_json(v));
    j = {{"kind", "polytope"}, {"vertices", verts}};
  }
  return j.dump();
}

std::string to_json(const ArcBoundary& boundary) {
  json j = boundary_json(boundary);
  j["report"] = report_json(boundary.report);
  return j.dump();
}

std::string to_json(const FVector& f) { return json{{"counts", f.counts}, {"approximate", f.approximate}}.dump(); }

std::string to_json(const GeneralPositionReport& report) { return report_json(report).dump(); }

std::string to_json(const ExpectationEstimate& e) {
  return json{{"value", e.value}, {"standard_error", e.standard_error}, {"method", to_string(e.method)}}.dump();
}

std::string to_off(const TaggedPolytope& polytope) {
  const auto& verts = polytope.vertices();
  std::ostringstream out;
  const bool planar = polytope.dim() == 2;
  const std::size_t faces = planar ? 1 : polytope.facets().size();
  out << "OFF\n" << verts.size() << ' ' << faces << " 0\n";
  for (const auto& v : verts) {
    out << format_real(v.point[0]) << ' ' << format_real(v.point[1]) << ' '
        << (planar ? std::string("0") : format_real(v.point[2])) << " # owner " << v.owner << '\n';
  }
  if (planar) {
    // Facets are counter clockwise edges; chain them into one polygon.
    out << polytope.facets().size();
    std::vector<std::size_t> next(verts.size());
    for (const auto& f : polytope.facets()) next[f.vertices[0]] = f.vertices[1];
    std::size_t v = polytope.facets().front().vertices[0];
    for (std::size_t k = 0; k < polytope.facets().size(); ++k, v = next[v]) out << ' ' << v;
    out << '\n';
  } else {
    for (const auto& f : polytope.facets()) out << "3 " << f.vertices[0] << ' ' << f.vertices[1] << ' ' << f.vertices[2] << '\n';
  }
  return out.str();
}

}  // namespace khull
