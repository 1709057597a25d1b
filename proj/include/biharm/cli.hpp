#pragma once

// Scenario runner behind the biharm command-line tool.
//
//   solve      solver far field and scattered field on the configured grids
//   oracle     Fourier–Bessel far field and field (centered circle, plane wave)
//   phaseless  the three phaseless datasets for each configured cavity
//   verify     no data files
//
// Every command runs the scenario's check list and writes report.json.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "biharm/oracle.hpp"
#include "biharm/scenario.hpp"
#include "biharm/verify.hpp"

namespace biharm::cli {

enum class Command { Solve, Verify, Oracle, Phaseless };

inline std::string to_string(Command c) {
  switch (c) {
    case Command::Solve: return "solve";
    case Command::Verify: return "verify";
    case Command::Oracle: return "oracle";
    case Command::Phaseless: return "phaseless";
  }
  return "?";
}

struct RunOptions {
  Command command = Command::Verify;
  std::optional<int> n;
  std::optional<std::string> out;
  bool timing = true;  // false writes wall_time_s = 0 for byte-stable reports
};

enum ExitCode : int { kExitPass = 0, kExitError = 1, kExitCheckFailed = 2 };

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Collects files in memory and writes them at the end, so a failed run
// leaves no partial outputs.
class Emitter {
 public:
  explicit Emitter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& name, std::string content) { files_.emplace_back(name, std::move(content)); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& f : files_) out.push_back(f.first);
    return out;
  }

  void write() const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw OutputError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    for (const auto& [name, content] : files_) {
      const std::filesystem::path path = dir_ / name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      if (!out) throw OutputError("cannot write '" + path.string() + "'");
      out << content;
      out.flush();
      if (!out) throw OutputError("failed writing '" + path.string() + "'");
    }
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::string, std::string>> files_;
};

inline std::string farfield_csv(const FarField& ff) {
  std::string out = "angle_radians,re,im,abs\n";
  for (std::size_t i = 0; i < ff.size(); ++i) {
    const Complex v = ff.values[i];
    out += format_double(ff.directions[i].theta()) + "," + format_double(v.real()) + "," +
           format_double(v.imag()) + "," + format_double(std::hypot(v.real(), v.imag())) + "\n";
  }
  return out;
}

struct FieldRow {
  Point2 x;
  Complex u;
  Complex uH;
  Complex uM;
};

inline std::string field_csv(const std::vector<FieldRow>& rows) {
  std::string out = "x1,x2,re_u,im_u,re_uH,im_uH,re_uM,im_uM\n";
  for (const FieldRow& r : rows) {
    out += format_double(r.x.x1) + "," + format_double(r.x.x2) + "," + format_double(r.u.real()) + "," +
           format_double(r.u.imag()) + "," + format_double(r.uH.real()) + "," + format_double(r.uH.imag()) +
           "," + format_double(r.uM.real()) + "," + format_double(r.uM.imag()) + "\n";
  }
  return out;
}

inline Json report_to_json(const CheckReport& r, bool timing) {
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  return Json{{"name", r.name},
              {"scene", r.scene},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"pass", r.pass},
              {"wall_time_s", timing ? r.wall_time_s : 0.0},
              {"metrics", metrics},
              {"note", r.note}};
}

namespace detail {

inline Point2 param_point(const CheckRequest& c, const char* key) {
  const Json& p = c.params.at(key);
  return {p[0].get<double>(), p[1].get<double>()};
}

// Field points used by solve/oracle: explicit points plus the exterior part of
// the grid (grid nodes inside or too close to the cavity are skipped).
inline std::vector<Point2> evaluation_points(const Scenario& s, const DiscreteBoundary& bd, std::size_t& skipped) {
  std::vector<Point2> pts = s.field_points;
  skipped = 0;
  if (s.field_grid) {
    for (const Point2& p : grid_points(*s.field_grid)) {
      if (is_exterior(bd, p, kMinEvaluationDistance)) {
        pts.push_back(p);
      } else {
        ++skipped;
      }
    }
  }
  return pts;
}

inline std::string phaseless_csv(const PhaselessConfig& cfg, const PhaselessData& data) {
  std::string out = "dataset,x1,x2,z1,z2,value\n";
  auto row = [&](const char* name, Point2 x, Point2 z, double v) {
    out += std::string(name) + "," + format_double(x.x1) + "," + format_double(x.x2) + "," +
           format_double(z.x1) + "," + format_double(z.x2) + "," + format_double(v) + "\n";
  };
  const std::size_t nz = cfg.sources.size();
  for (std::size_t i = 0; i < cfg.receivers.size(); ++i) row("single", cfg.receivers[i], cfg.z0, data.single[i]);
  for (std::size_t i = 0; i < cfg.receivers.size(); ++i) {
    for (std::size_t k = 0; k < nz; ++k) row("pair", cfg.receivers[i], cfg.sources[k], data.pairs[i * nz + k]);
  }
  for (std::size_t i = 0; i < cfg.receivers.size(); ++i) {
    for (std::size_t k = 0; k < nz; ++k) {
      row("superposed", cfg.receivers[i], cfg.sources[k], data.superposed[i * nz + k]);
    }
  }
  return out;
}

}  // namespace detail

inline CheckReport run_check_request(const Scenario& s, const CheckRequest& c) {
  const Wavenumber kappa(s.wavenumber);
  const Curve curve(s.shape);
  const Json& p = c.params;
  const std::optional<double> tol = c.tolerance;
  const Scene scene{s.shape, s.wavenumber, s.n, s.incident};
  auto theta_d = [&] { return std::get<PlaneWave>(s.incident).direction.theta(); };
  if (c.name == "interior_representation") {
    const Direction d(p.at("theta").get<double>());
    const InteriorTestField f =
        p.at("test_field") == "plane" ? InteriorTestField{EntirePlane{d}} : InteriorTestField{EntireModified{d}};
    return check_interior_representation(curve, kappa, s.n, f, tol);
  }
  if (c.name == "exterior_representation") return check_exterior_representation(curve, kappa, s.n, tol);
  if (c.name == "exterior_null_field") return check_exterior_null_field(curve, kappa, s.n, tol);
  if (c.name == "manufactured_solution") return check_manufactured_solution(curve, kappa, s.n, tol);
  if (c.name == "farfield_equivalence") return check_farfield_equivalence(scene, tol);
  if (c.name == "circle_oracle_farfield") {
    return check_circle_oracle_farfield(s.shape.a, kappa, theta_d(), s.n, p.at("order").get<int>(), s.directions, tol);
  }
  if (c.name == "circle_oracle_field") {
    return check_circle_oracle_field(s.shape.a, kappa, theta_d(), s.n, p.at("order").get<int>(), tol);
  }
  if (c.name == "mixed_reciprocity") {
    return check_mixed_reciprocity(curve, kappa, s.n, detail::param_point(c, "z"),
                                   uniform_directions(p.at("directions").get<std::size_t>()), tol);
  }
  if (c.name == "symmetry") {
    const std::string comp = p.at("component");
    const SymmetryComponent which = comp == "H"   ? SymmetryComponent::Helmholtz
                                    : comp == "M" ? SymmetryComponent::Modified
                                                  : SymmetryComponent::Biharmonic;
    return check_symmetry(curve, kappa, s.n, detail::param_point(c, "x"), detail::param_point(c, "z"), which, tol);
  }
  if (c.name == "translation_invariance") {
    return check_translation_invariance(curve, kappa, s.n, detail::param_point(c, "h"), theta_d(), tol);
  }
  if (c.name == "m_decay") {
    return check_M_decay(scene, Direction(p.at("direction").get<double>()),
                         p.at("radii").get<std::vector<double>>(), tol);
  }
  if (c.name == "asymptotic_expansion") {
    return check_asymptotic_expansion(scene, Direction(p.at("direction").get<double>()),
                                      p.at("radius").get<double>(), tol);
  }
  if (c.name == "self_convergence") return check_self_convergence(curve, kappa, s.n, theta_d(), tol);
  if (c.name == "phaseless_identical") {
    const int n2 = s.n * p.at("refinement").get<int>();
    return phaseless_discrepancy(curve, s.n, curve, n2, kappa, s.phaseless->config, tol);
  }
  if (c.name == "phaseless_distinguishability") {
    return check_phaseless_distinguishability(curve, Curve(*s.phaseless->second_shape), kappa, s.n,
                                              s.phaseless->config, tol);
  }
  throw ValidationError("unknown check '" + c.name + "'");
}

struct RunResult {
  Json report;
  std::vector<CheckReport> checks;
  bool all_pass = true;
};

// Runs the command and adds its data files to `emit`; throws on any error.
inline RunResult execute(const Scenario& s, const RunOptions& opts, Emitter& emit) {
  validate_scenario(s);
  RunResult result;
  Json extra = Json::object();
  const Wavenumber kappa(s.wavenumber);
  const Curve curve(s.shape);
  const std::vector<Direction> dirs = uniform_directions(s.directions);

  switch (opts.command) {
    case Command::Solve: {
      const Scatterer sc(curve, kappa, s.n);
      const TraceSolution ts = sc.solve(s.incident);
      emit.add("farfield.csv", farfield_csv(sc.farfield(ts, dirs)));
      std::size_t skipped = 0;
      const std::vector<Point2> pts = detail::evaluation_points(s, sc.boundary(), skipped);
      std::vector<FieldRow> rows;
      for (const FieldSample& f : sc.field(ts, pts)) rows.push_back({{}, f.u, f.uH, f.uM});
      for (std::size_t i = 0; i < pts.size(); ++i) rows[i].x = pts[i];
      emit.add("field.csv", field_csv(rows));
      extra["solve"] = Json{{"condition_estimate", sc.solver().condition_estimate()},
                            {"unknowns", 4 * s.n},
                            {"field_points", pts.size()},
                            {"field_points_skipped", skipped}};
      break;
    }
    case Command::Oracle: {
      if (!config::is_centered_circle(s)) throw ConfigError("shape", "oracle needs a circle centered at the origin");
      if (!config::is_plane_wave(s)) throw ConfigError("incident", "oracle needs a plane wave");
      const int order = static_cast<int>(std::ceil(s.wavenumber * s.shape.a)) + 40;
      const MieSolution mie = mie_solve(s.shape.a, kappa, std::get<PlaneWave>(s.incident).direction.theta(), order);
      emit.add("farfield_oracle.csv", farfield_csv(mie_farfield(mie, dirs)));
      std::size_t skipped = 0;
      const std::vector<Point2> pts = detail::evaluation_points(s, discretize(curve, s.n), skipped);
      std::vector<FieldRow> rows;
      const std::vector<MieFieldSample> field = mie_field(mie, pts);
      for (std::size_t i = 0; i < pts.size(); ++i) rows.push_back({pts[i], field[i].u, field[i].uH, field[i].uM});
      emit.add("field_oracle.csv", field_csv(rows));
      extra["oracle"] = Json{{"order", order},
                             {"max_mode_residual", mie.max_residual},
                             {"field_points", pts.size()},
                             {"field_points_skipped", skipped}};
      break;
    }
    case Command::Phaseless: {
      if (!s.phaseless) throw ConfigError("phaseless", "the phaseless command needs a phaseless block");
      const Scatterer first(curve, kappa, s.n);
      emit.add("phaseless_cavity1.csv",
               detail::phaseless_csv(s.phaseless->config, phaseless_data(first, s.phaseless->config)));
      if (s.phaseless->second_shape) {
        const Scatterer second(Curve(*s.phaseless->second_shape), kappa, s.n);
        emit.add("phaseless_cavity2.csv",
                 detail::phaseless_csv(s.phaseless->config, phaseless_data(second, s.phaseless->config)));
      }
      break;
    }
    case Command::Verify: break;
  }

  Json checks = Json::array();
  for (const CheckRequest& c : s.checks) {
    CheckReport r;
    try {
      r = run_check_request(s, c);
    } catch (const std::exception& e) {
      throw std::runtime_error("check '" + c.name + "' on " + describe_scene(s.shape, s.wavenumber, s.n) +
                               ": " + e.what());
    }
    result.all_pass = result.all_pass && r.pass;
    checks.push_back(report_to_json(r, opts.timing));
    result.checks.push_back(std::move(r));
  }

  std::size_t passed = 0;
  for (const CheckReport& r : result.checks) passed += r.pass ? 1 : 0;
  result.report = Json{{"command", to_string(opts.command)},
                       {"scenario", to_json(s)},
                       {"checks", checks},
                       {"summary", {{"requested", s.checks.size()}, {"passed", passed}, {"all_pass", result.all_pass}}}};
  for (const auto& [k, v] : extra.items()) result.report[k] = v;
  std::vector<std::string> files = emit.names();
  files.push_back("report.json");
  result.report["files"] = files;
  emit.add("report.json", result.report.dump(2) + "\n");
  return result;
}

// Full command: load, override, run, write. Returns the process exit code.
inline int run(const std::string& config_path, const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    Scenario s = load_scenario(config_path);
    if (opts.n) {
      if (*opts.n < 16) throw ConfigError("--n", "node parameter must be at least 16");
      s.n = *opts.n;
    }
    if (opts.out) s.output = *opts.out;
    Emitter emit(s.output);
    const RunResult result = execute(s, opts, emit);
    emit.write();
    for (const CheckReport& r : result.checks) {
      out << (r.pass ? "PASS " : "FAIL ") << r.name << "  residual=" << format_double(r.residual)
          << "  tolerance=" << format_double(r.tolerance) << "\n";
    }
    out << "wrote " << s.output << "/report.json\n";
    return result.all_pass ? kExitPass : kExitCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace biharm::cli
