#pragma once

// Scenario files: a JSON object (conventionally with a .cfg extension) that
// names one cavity, a wavenumber, an incident field, evaluation grids and the
// checks to run. Parsing fills every default, so serialize(parse(text)) is a
// fixed point of parse-then-serialize.

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "biharm/core.hpp"
#include "biharm/geometry.hpp"
#include "biharm/incident.hpp"
#include "biharm/solver.hpp"
#include "biharm/verify.hpp"

namespace biharm {

using Json = nlohmann::json;

// Malformed or out-of-range scenario entry; the message starts with the field path.
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : ValidationError("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct FieldGrid {
  double x1_min = 0.0;
  double x1_max = 0.0;
  double x2_min = 0.0;
  double x2_max = 0.0;
  int count1 = 0;
  int count2 = 0;
};

struct CheckRequest {
  std::string name;
  std::optional<double> tolerance;
  Json params = Json::object();  // normalized: every parameter present
};

struct PhaselessSpec {
  PhaselessConfig config;
  std::optional<ShapeSpec> second_shape;
};

struct Scenario {
  std::string name = "scenario";
  double wavenumber = 1.0;
  ShapeSpec shape;
  IncidentField incident = PlaneWave{Direction(0.0)};
  int n = 64;
  std::size_t directions = 360;
  std::vector<Point2> field_points;
  std::optional<FieldGrid> field_grid;
  std::vector<CheckRequest> checks;
  std::optional<PhaselessSpec> phaseless;
  std::string output = "biharm-out";
};

namespace config {

// Parameter defaults per check; a null default marks a required parameter.
inline const std::map<std::string, Json>& check_parameters() {
  static const std::map<std::string, Json> table{
      {"interior_representation", {{"test_field", "plane"}, {"theta", 0.4}}},
      {"exterior_representation", Json::object()},
      {"exterior_null_field", Json::object()},
      {"manufactured_solution", Json::object()},
      {"farfield_equivalence", Json::object()},
      {"circle_oracle_farfield", {{"order", 40}}},
      {"circle_oracle_field", {{"order", 40}}},
      {"mixed_reciprocity", {{"z", nullptr}, {"directions", 8}}},
      {"symmetry", {{"component", "Bi"}, {"x", nullptr}, {"z", nullptr}}},
      {"translation_invariance", {{"h", nullptr}}},
      {"m_decay", {{"direction", 0.3}, {"radii", Json::array({3.0, 4.0, 5.0})}}},
      {"asymptotic_expansion", {{"direction", 0.3}, {"radius", 50.0}}},
      {"self_convergence", Json::object()},
      {"phaseless_identical", {{"refinement", 2}}},
      {"phaseless_distinguishability", Json::object()},
  };
  return table;
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
}

inline void reject_unknown(const Json& j, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(join(path, key), "unknown field");
  }
}

inline double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
  return v;
}

inline double positive(const Json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) throw ConfigError(path, "expected a positive number");
  return v;
}

inline long long integer(const Json& j, const std::string& path, long long lo, long long hi) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const long long v = j.get<long long>();
  if (v < lo || v > hi) {
    throw ConfigError(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return v;
}

inline std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

inline Point2 point(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected a point [x1, x2]");
  return {number(j[0], index(path, 0)), number(j[1], index(path, 1))};
}

inline std::vector<Point2> points(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array of points");
  std::vector<Point2> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(point(j[i], index(path, i)));
  return out;
}

inline const Json& required(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ConfigError(join(path, key), "missing required field");
  return j.at(key);
}

inline Json to_json(Point2 p) { return Json::array({p.x1, p.x2}); }

inline Json to_json(const std::vector<Point2>& pts) {
  Json out = Json::array();
  for (const Point2& p : pts) out.push_back(to_json(p));
  return out;
}

inline ShapeSpec parse_shape(const Json& j, const std::string& path) {
  require_object(j, path);
  ShapeSpec s;
  s.kind = [&] {
    try {
      return shape_kind_from_string(text(required(j, "kind", path), join(path, "kind")));
    } catch (const ConfigError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ConfigError(join(path, "kind"), e.what());
    }
  }();
  s.center = j.contains("center") ? point(j.at("center"), join(path, "center")) : Point2{};
  switch (s.kind) {
    case ShapeKind::Circle:
      reject_unknown(j, path, {"kind", "center", "radius"});
      s.a = s.b = positive(required(j, "radius", path), join(path, "radius"));
      break;
    case ShapeKind::Ellipse:
      reject_unknown(j, path, {"kind", "center", "a", "b"});
      s.a = positive(required(j, "a", path), join(path, "a"));
      s.b = positive(required(j, "b", path), join(path, "b"));
      break;
    default:
      reject_unknown(j, path, {"kind", "center", "scale"});
      s.a = s.b = j.contains("scale") ? positive(j.at("scale"), join(path, "scale")) : 1.0;
      break;
  }
  return s;
}

inline Json shape_to_json(const ShapeSpec& s) {
  Json j{{"kind", to_string(s.kind)}, {"center", to_json(s.center)}};
  switch (s.kind) {
    case ShapeKind::Circle: j["radius"] = s.a; break;
    case ShapeKind::Ellipse: j["a"] = s.a; j["b"] = s.b; break;
    default: j["scale"] = s.a; break;
  }
  return j;
}

inline IncidentField parse_incident(const Json& j, const std::string& path) {
  require_object(j, path);
  const std::string type = text(required(j, "type", path), join(path, "type"));
  auto z = [&](const char* key) { return point(required(j, key, path), join(path, key)); };
  if (type == "plane_wave") {
    reject_unknown(j, path, {"type", "theta"});
    return PlaneWave{Direction(j.contains("theta") ? number(j.at("theta"), join(path, "theta")) : 0.0)};
  }
  if (type == "point_source_h" || type == "point_source_m" || type == "point_source_bi") {
    reject_unknown(j, path, {"type", "z"});
    if (type == "point_source_h") return PointSourceH{z("z")};
    if (type == "point_source_m") return PointSourceM{z("z")};
    return PointSourceBi{z("z")};
  }
  if (type == "superposition_bi") {
    reject_unknown(j, path, {"type", "z0", "z"});
    return SuperpositionBi{z("z0"), z("z")};
  }
  throw ConfigError(join(path, "type"),
                    "unknown incident '" + type +
                        "' (expected plane_wave, point_source_h, point_source_m, point_source_bi or "
                        "superposition_bi)");
}

inline Json incident_to_json(const IncidentField& inc) {
  return std::visit(
      detail::Overloaded{
          [](const PlaneWave& p) { return Json{{"type", "plane_wave"}, {"theta", p.direction.theta()}}; },
          [](const PointSourceH& s) { return Json{{"type", "point_source_h"}, {"z", to_json(s.z)}}; },
          [](const PointSourceM& s) { return Json{{"type", "point_source_m"}, {"z", to_json(s.z)}}; },
          [](const PointSourceBi& s) { return Json{{"type", "point_source_bi"}, {"z", to_json(s.z)}}; },
          [](const SuperpositionBi& s) {
            return Json{{"type", "superposition_bi"}, {"z0", to_json(s.z0)}, {"z", to_json(s.z)}};
          }},
      inc);
}

inline bool same_kind(const Json& value, const Json& reference) {
  if (reference.is_number()) return value.is_number();
  return value.type() == reference.type();
}

inline CheckRequest parse_check(const Json& j, const std::string& path) {
  CheckRequest req;
  if (j.is_string()) {
    req.name = j.get<std::string>();
  } else {
    require_object(j, path);
    req.name = text(required(j, "check", path), join(path, "check"));
  }
  const auto& table = check_parameters();
  const auto it = table.find(req.name);
  if (it == table.end()) throw ConfigError(join(path, "check"), "unknown check '" + req.name + "'");
  req.params = it->second;
  if (!j.is_object()) {
    for (const auto& [key, value] : req.params.items()) {
      if (value.is_null()) throw ConfigError(join(path, key), "missing required parameter");
    }
    return req;
  }
  for (const auto& [key, value] : j.items()) {
    const std::string field = join(path, key);
    if (key == "check") continue;
    if (key == "tolerance") {
      req.tolerance = positive(value, field);
      continue;
    }
    if (!req.params.contains(key)) throw ConfigError(field, "unknown parameter for check '" + req.name + "'");
    const Json& reference = it->second.at(key);
    if (!reference.is_null() && !same_kind(value, reference)) {
      throw ConfigError(field, "expected " + std::string(reference.type_name()));
    }
    req.params[key] = value;
  }
  for (const auto& [key, value] : req.params.items()) {
    if (value.is_null()) throw ConfigError(join(path, key), "missing required parameter");
  }
  const Json& p = req.params;
  auto pt = [&](const char* key) { point(p.at(key), join(path, key)); };
  if (req.name == "interior_representation") {
    const std::string f = p.at("test_field");
    if (f != "plane" && f != "modified") throw ConfigError(join(path, "test_field"), "expected 'plane' or 'modified'");
    number(p.at("theta"), join(path, "theta"));
  } else if (req.name == "circle_oracle_farfield" || req.name == "circle_oracle_field") {
    integer(p.at("order"), join(path, "order"), 1, 2000);
  } else if (req.name == "mixed_reciprocity") {
    pt("z");
    integer(p.at("directions"), join(path, "directions"), 1, 100000);
  } else if (req.name == "symmetry") {
    const std::string c = p.at("component");
    if (c != "H" && c != "M" && c != "Bi") throw ConfigError(join(path, "component"), "expected 'H', 'M' or 'Bi'");
    pt("x");
    pt("z");
  } else if (req.name == "translation_invariance") {
    pt("h");
  } else if (req.name == "m_decay") {
    number(p.at("direction"), join(path, "direction"));
    const Json& radii = p.at("radii");
    for (std::size_t i = 0; i < radii.size(); ++i) positive(radii[i], index(join(path, "radii"), i));
  } else if (req.name == "asymptotic_expansion") {
    number(p.at("direction"), join(path, "direction"));
    positive(p.at("radius"), join(path, "radius"));
  } else if (req.name == "phaseless_identical") {
    integer(p.at("refinement"), join(path, "refinement"), 1, 64);
  }
  return req;
}

inline Json check_to_json(const CheckRequest& req) {
  Json j = req.params;
  j["check"] = req.name;
  if (req.tolerance) j["tolerance"] = *req.tolerance;
  return j;
}

}  // namespace config

inline Scenario parse_scenario(const Json& j) {
  using namespace config;
  require_object(j, "");
  reject_unknown(j, "", {"name", "wavenumber", "shape", "incident", "n", "grids", "checks", "phaseless", "output"});
  Scenario s;
  if (j.contains("name")) s.name = text(j.at("name"), "name");
  {
    const Json& k = required(j, "wavenumber", "");
    if (!k.is_number()) throw ConfigError("wavenumber", "expected a number");
    try {
      s.wavenumber = Wavenumber(k.get<double>()).value();
    } catch (const ValidationError& e) {
      throw ConfigError("wavenumber", e.what());
    }
  }
  s.shape = parse_shape(required(j, "shape", ""), "shape");
  if (j.contains("incident")) s.incident = parse_incident(j.at("incident"), "incident");
  if (j.contains("n")) s.n = static_cast<int>(integer(j.at("n"), "n", 16, 4096));
  if (j.contains("grids")) {
    const Json& g = j.at("grids");
    require_object(g, "grids");
    reject_unknown(g, "grids", {"directions", "field_points", "field_grid"});
    if (g.contains("directions")) {
      s.directions = static_cast<std::size_t>(integer(g.at("directions"), "grids.directions", 1, 1000000));
    }
    if (g.contains("field_points")) s.field_points = points(g.at("field_points"), "grids.field_points");
    if (g.contains("field_grid") && !g.at("field_grid").is_null()) {
      const Json& fg = g.at("field_grid");
      const std::string path = "grids.field_grid";
      require_object(fg, path);
      reject_unknown(fg, path, {"x1", "x2", "count"});
      const Point2 x1 = point(required(fg, "x1", path), join(path, "x1"));
      const Point2 x2 = point(required(fg, "x2", path), join(path, "x2"));
      const Json& count = required(fg, "count", path);
      if (!count.is_array() || count.size() != 2) throw ConfigError(join(path, "count"), "expected [count1, count2]");
      FieldGrid grid{x1.x1, x1.x2, x2.x1, x2.x2,
                     static_cast<int>(integer(count[0], join(path, "count[0]"), 1, 4096)),
                     static_cast<int>(integer(count[1], join(path, "count[1]"), 1, 4096))};
      if (!(grid.x1_min <= grid.x1_max)) throw ConfigError(join(path, "x1"), "expected [min, max] with min <= max");
      if (!(grid.x2_min <= grid.x2_max)) throw ConfigError(join(path, "x2"), "expected [min, max] with min <= max");
      s.field_grid = grid;
    }
  }
  if (j.contains("checks")) {
    const Json& c = j.at("checks");
    if (!c.is_array()) throw ConfigError("checks", "expected an array");
    for (std::size_t i = 0; i < c.size(); ++i) s.checks.push_back(parse_check(c[i], index("checks", i)));
  }
  if (j.contains("phaseless") && !j.at("phaseless").is_null()) {
    const Json& p = j.at("phaseless");
    require_object(p, "phaseless");
    reject_unknown(p, "phaseless", {"z0", "receivers", "sources", "second_shape"});
    PhaselessSpec spec;
    spec.config.z0 = point(required(p, "z0", "phaseless"), "phaseless.z0");
    spec.config.receivers = points(required(p, "receivers", "phaseless"), "phaseless.receivers");
    spec.config.sources = points(required(p, "sources", "phaseless"), "phaseless.sources");
    if (spec.config.receivers.empty()) throw ConfigError("phaseless.receivers", "expected at least one point");
    if (spec.config.sources.empty()) throw ConfigError("phaseless.sources", "expected at least one point");
    if (p.contains("second_shape") && !p.at("second_shape").is_null()) {
      spec.second_shape = parse_shape(p.at("second_shape"), "phaseless.second_shape");
    }
    s.phaseless = spec;
  }
  if (j.contains("output")) s.output = text(j.at("output"), "output");
  return s;
}

inline Scenario parse_scenario_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed scenario file: ") + e.what());
  }
  return parse_scenario(j);
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

inline Json to_json(const Scenario& s) {
  using namespace config;
  Json grids{{"directions", s.directions}, {"field_points", to_json(s.field_points)}};
  if (s.field_grid) {
    const FieldGrid& g = *s.field_grid;
    grids["field_grid"] = Json{{"x1", Json::array({g.x1_min, g.x1_max})},
                               {"x2", Json::array({g.x2_min, g.x2_max})},
                               {"count", Json::array({g.count1, g.count2})}};
  }
  Json checks = Json::array();
  for (const CheckRequest& c : s.checks) checks.push_back(check_to_json(c));
  Json j{{"name", s.name},
         {"wavenumber", s.wavenumber},
         {"shape", shape_to_json(s.shape)},
         {"incident", incident_to_json(s.incident)},
         {"n", s.n},
         {"grids", grids},
         {"checks", checks},
         {"output", s.output}};
  if (s.phaseless) {
    Json p{{"z0", to_json(s.phaseless->config.z0)},
           {"receivers", to_json(s.phaseless->config.receivers)},
           {"sources", to_json(s.phaseless->config.sources)}};
    if (s.phaseless->second_shape) p["second_shape"] = shape_to_json(*s.phaseless->second_shape);
    j["phaseless"] = p;
  }
  return j;
}

inline std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

// Points of the field grid (row-major in x2, then x1).
inline std::vector<Point2> grid_points(const FieldGrid& g) {
  std::vector<Point2> pts;
  auto axis = [](double lo, double hi, int count, int i) {
    return count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  };
  for (int j = 0; j < g.count2; ++j) {
    for (int i = 0; i < g.count1; ++i) {
      pts.push_back({axis(g.x1_min, g.x1_max, g.count1, i), axis(g.x2_min, g.x2_max, g.count2, j)});
    }
  }
  return pts;
}

namespace config {

inline bool is_plane_wave(const Scenario& s) { return std::holds_alternative<PlaneWave>(s.incident); }

inline bool is_centered_circle(const Scenario& s) {
  return s.shape.kind == ShapeKind::Circle && s.shape.center == Point2{};
}

inline void require_clear(const DiscreteBoundary& bd, Point2 p, const std::string& field) {
  if (!is_exterior(bd, p, kMinEvaluationDistance)) {
    throw ConfigError(field, "point " + detail::format_point(p) +
                                 " must lie outside the cavity, at least " +
                                 std::to_string(kMinEvaluationDistance) + " x scale from the boundary");
  }
}

}  // namespace config

// Geometric and parameter constraints of the numerical modules, checked before
// any assembly.
inline void validate_scenario(const Scenario& s) {
  using namespace config;
  const Wavenumber kappa(s.wavenumber);
  if (s.n < 16) throw ConfigError("n", "node parameter must be at least 16");
  const Curve curve = [&] {
    try {
      return Curve(s.shape);
    } catch (const ValidationError& e) {
      throw ConfigError("shape", e.what());
    }
  }();
  const DiscreteBoundary bd = discretize(curve, s.n);
  try {
    validate_sources(s.incident, bd);
  } catch (const ValidationError& e) {
    throw ConfigError("incident", e.what());
  }
  for (std::size_t i = 0; i < s.field_points.size(); ++i) {
    require_clear(bd, s.field_points[i], index("grids.field_points", i));
  }
  for (std::size_t i = 0; i < s.checks.size(); ++i) {
    const CheckRequest& c = s.checks[i];
    const std::string path = index("checks", i);
    const Json& p = c.params;
    if (c.name == "circle_oracle_farfield" || c.name == "circle_oracle_field") {
      if (!is_centered_circle(s)) throw ConfigError("shape", "check '" + c.name + "' needs a circle centered at the origin");
      if (!is_plane_wave(s)) throw ConfigError("incident", "check '" + c.name + "' needs a plane wave");
      if (p.at("order").get<double>() < s.wavenumber * s.shape.a + 20.0) {
        throw ConfigError(join(path, "order"), "truncation order must be at least kappa*R + 20");
      }
    } else if (c.name == "translation_invariance" || c.name == "self_convergence") {
      if (!is_plane_wave(s)) throw ConfigError("incident", "check '" + c.name + "' needs a plane wave");
    } else if (c.name == "mixed_reciprocity") {
      require_clear(bd, point(p.at("z"), join(path, "z")), join(path, "z"));
    } else if (c.name == "symmetry") {
      const Point2 x = point(p.at("x"), join(path, "x"));
      const Point2 z = point(p.at("z"), join(path, "z"));
      require_clear(bd, x, join(path, "x"));
      require_clear(bd, z, join(path, "z"));
      if (x == z) throw ConfigError(join(path, "z"), "x and z must differ");
    } else if (c.name == "m_decay") {
      const Json& radii = p.at("radii");
      if (radii.size() < 2) throw ConfigError(join(path, "radii"), "expected at least two radii");
      double last = 0.0;
      for (std::size_t r = 0; r < radii.size(); ++r) {
        const double v = radii[r].get<double>();
        if (v < 3.0 * curve.scale()) {
          throw ConfigError(index(join(path, "radii"), r), "radius must be at least 3 x shape scale");
        }
        if (r > 0 && !(v > last)) throw ConfigError(join(path, "radii"), "radii must increase");
        last = v;
      }
    } else if (c.name == "asymptotic_expansion") {
      if (p.at("radius").get<double>() < 25.0 * curve.scale()) {
        throw ConfigError(join(path, "radius"), "radius must be at least 25 x shape scale");
      }
    } else if (c.name == "phaseless_identical" || c.name == "phaseless_distinguishability") {
      if (!s.phaseless) throw ConfigError("phaseless", "check '" + c.name + "' needs a phaseless block");
      if (c.name == "phaseless_distinguishability" && !s.phaseless->second_shape) {
        throw ConfigError("phaseless.second_shape", "check '" + c.name + "' needs a second cavity");
      }
    }
  }
  if (s.phaseless) {
    std::vector<DiscreteBoundary> grids{bd};
    if (s.phaseless->second_shape) {
      try {
        grids.push_back(discretize(Curve(*s.phaseless->second_shape), s.n));
      } catch (const ValidationError& e) {
        throw ConfigError("phaseless.second_shape", e.what());
      }
    }
    std::vector<const DiscreteBoundary*> ptrs;
    for (const auto& g : grids) ptrs.push_back(&g);
    try {
      validate_phaseless(s.phaseless->config, ptrs);
    } catch (const ValidationError& e) {
      throw ConfigError("phaseless", e.what());
    }
  }
}

}  // namespace biharm
