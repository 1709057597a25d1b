#pragma once

// Executable checks of the identities satisfied by biharmonic scattering from a
// clamped cavity. Each check reduces to a nonnegative residual compared with a
// tolerance; all slack is discretization error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "biharm/cauchy_data.hpp"
#include "biharm/core.hpp"
#include "biharm/geometry.hpp"
#include "biharm/incident.hpp"
#include "biharm/kernels.hpp"
#include "biharm/oracle.hpp"
#include "biharm/representation.hpp"
#include "biharm/solver.hpp"

namespace biharm {

struct CheckReport {
  std::string name;
  std::string scene;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time_s = 0.0;
  std::map<std::string, double> metrics;  // secondary quantities, e.g. signal levels
  std::string note;
};

// Default tolerance per check name; scenario files may override any entry.
inline const std::map<std::string, double>& default_tolerances() {
  static const std::map<std::string, double> table{
      {"interior_representation", 1e-10},
      {"exterior_representation", 1e-8},
      {"exterior_null_field", 1e-8},
      {"farfield_equivalence", 1e-12},
      {"mixed_reciprocity", 1e-6},
      {"symmetry", 1e-6},
      {"translation_invariance", 1e-6},
      {"m_decay", 0.5},
      {"asymptotic_expansion", 0.4},
      {"circle_oracle_farfield", 1e-6},
      {"circle_oracle_field", 1e-6},
      {"manufactured_solution", 1e-6},
      {"self_convergence", 1e-2},
      {"phaseless_identical", 1e-6},
      {"phaseless_distinguishability", 1e-3},
  };
  return table;
}

inline double default_tolerance(const std::string& check) {
  const auto& table = default_tolerances();
  const auto it = table.find(check);
  if (it == table.end()) throw ValidationError("unknown check '" + check + "'");
  return it->second;
}

struct Scene {
  ShapeSpec shape;
  double kappa = 1.0;
  int n = 64;
  IncidentField incident = PlaneWave{Direction(0.0)};
};

inline std::string describe(const ShapeSpec& s) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(s.kind) << " center=(" << s.center.x1 << ", " << s.center.x2 << ")";
  switch (s.kind) {
    case ShapeKind::Circle: os << " radius=" << s.a; break;
    case ShapeKind::Ellipse: os << " a=" << s.a << " b=" << s.b; break;
    default: os << " scale=" << s.a; break;
  }
  return os.str();
}

inline std::string describe_scene(const ShapeSpec& shape, double kappa, int n,
                                  const std::string& extra = {}) {
  std::ostringstream os;
  os.precision(17);
  os << describe(shape) << "; kappa=" << kappa << "; n=" << n;
  if (!extra.empty()) os << "; " << extra;
  return os.str();
}

inline std::string describe(const Scene& s) {
  return describe_scene(s.shape, s.kappa, s.n, "incident=" + describe(s.incident));
}

namespace detail {

struct Outcome {
  double residual = 0.0;
  std::map<std::string, double> metrics;
  std::string note;
};

inline CheckReport run_check(std::string name, std::string scene, double tolerance,
                             const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out = body();
  const auto stop = std::chrono::steady_clock::now();
  CheckReport report;
  report.name = std::move(name);
  report.scene = std::move(scene);
  report.residual = out.residual;
  report.tolerance = tolerance;
  report.pass = out.residual <= tolerance;
  report.wall_time_s = std::chrono::duration<double>(stop - start).count();
  report.metrics = std::move(out.metrics);
  report.note = std::move(out.note);
  return report;
}

inline double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace detail

// Points strictly inside the cavity: boundary points pulled toward the centroid.
inline std::vector<Point2> interior_probe_points(const DiscreteBoundary& bd, std::size_t count) {
  const Point2 c = centroid(bd);
  std::vector<Point2> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count) + 0.3;
    double pull = 0.4;
    const std::size_t node =
        static_cast<std::size_t>(std::lround(t / bd.weight())) % bd.size();
    Point2 p = c + pull * (bd.points[node] - c);
    while (!is_inside(bd, p) || min_distance_to_nodes(bd, p) < 0.25 * bd.scale) {
      pull *= 0.5;
      p = c + pull * (bd.points[node] - c);
      if (pull < 1e-3) break;
    }
    pts.push_back(p);
  }
  return pts;
}

// Points on a circle of radius `factor` × scale about the curve center.
inline std::vector<Point2> exterior_probe_points(const Curve& curve, std::size_t count,
                                                 double factor = 2.0, double phase = 0.1) {
  std::vector<Point2> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count) + phase;
    pts.push_back(curve.center() + factor * curve.scale() * Point2{std::cos(t), std::sin(t)});
  }
  return pts;
}

// Exact Cauchy data of the radiating field G(·, source) on the grid.
inline CauchyData4 point_source_cauchy_data(const DiscreteBoundary& bd, Wavenumber kappa,
                                            Point2 source) {
  const auto count = static_cast<Eigen::Index>(bd.size());
  CauchyData4 data = CauchyData4::zeros(count);
  for (Eigen::Index j = 0; j < count; ++j) {
    const auto jj = static_cast<std::size_t>(j);
    const Point2 y = bd.points[jj];
    const Point2 n = bd.normals[jj];
    const LaplacianTraces pq = green_laplacian_traces(kappa, source, y, n);
    data.v[j] = green_biharmonic(kappa, source, y);
    data.dn_v[j] = green_normal_derivative(KernelKind::Biharmonic, kappa, source, y, n);
    data.Pv[j] = pq.P;
    data.Qv[j] = pq.Q;
  }
  return data;
}

// u = W - U inside D for an entire solution of Δ²u = κ⁴u.
inline CheckReport check_interior_representation(const Curve& curve, Wavenumber kappa, int n,
                                                 const InteriorTestField& field,
                                                 std::optional<double> tolerance = {}) {
  const DiscreteBoundary bd = discretize(curve, n);
  return detail::run_check(
      "interior_representation",
      describe_scene(curve.spec(), kappa.value(), n, "test field=" + describe(field)),
      tolerance.value_or(default_tolerance("interior_representation")), [&] {
        const CauchyData4 data = interior_test_traces(field, bd, kappa);
        detail::Outcome out;
        for (const Point2& x : interior_probe_points(bd, 10)) {
          const Complex rep = eval_W(data, bd, kappa, x) - eval_U(data, bd, kappa, x);
          out.residual = std::max(out.residual, std::abs(rep - eval_interior_test(field, kappa, x)));
        }
        return out;
      });
}

// u = U - W outside D for the radiating field G(·, z) with z at the centroid.
inline CheckReport check_exterior_representation(const Curve& curve, Wavenumber kappa, int n,
                                                 std::optional<double> tolerance = {}) {
  const DiscreteBoundary bd = discretize(curve, n);
  const Point2 source = centroid(bd);
  return detail::run_check(
      "exterior_representation",
      describe_scene(curve.spec(), kappa.value(), n,
                     "field=G(., " + detail::format_point(source) + ")"),
      tolerance.value_or(default_tolerance("exterior_representation")), [&] {
        const CauchyData4 data = point_source_cauchy_data(bd, kappa, source);
        detail::Outcome out;
        for (const Point2& x : exterior_probe_points(curve, 10)) {
          const Complex rep = eval_U(data, bd, kappa, x) - eval_W(data, bd, kappa, x);
          out.residual = std::max(out.residual, std::abs(rep - green_biharmonic(kappa, source, x)));
        }
        return out;
      });
}

// The exterior representation of radiating data vanishes inside D.
inline CheckReport check_exterior_null_field(const Curve& curve, Wavenumber kappa, int n,
                                             std::optional<double> tolerance = {}) {
  const DiscreteBoundary bd = discretize(curve, n);
  const Point2 source = centroid(bd);
  return detail::run_check(
      "exterior_null_field",
      describe_scene(curve.spec(), kappa.value(), n,
                     "field=G(., " + detail::format_point(source) + ")"),
      tolerance.value_or(default_tolerance("exterior_null_field")), [&] {
        const CauchyData4 data = point_source_cauchy_data(bd, kappa, source);
        detail::Outcome out;
        for (const Point2& x : interior_probe_points(bd, 10)) {
          out.residual = std::max(out.residual,
                                  std::abs(eval_U(data, bd, kappa, x) - eval_W(data, bd, kappa, x)));
        }
        return out;
      });
}

// Solver recovers the radiating field G(·, z_int) from its own clamped data.
inline CheckReport check_manufactured_solution(const Curve& curve, Wavenumber kappa, int n,
                                               std::optional<double> tolerance = {}) {
  const DiscreteBoundary bd = discretize(curve, n);
  const Point2 source = centroid(bd);
  return detail::run_check(
      "manufactured_solution",
      describe_scene(curve.spec(), kappa.value(), n,
                     "field=G(., " + detail::format_point(source) + ")"),
      tolerance.value_or(default_tolerance("manufactured_solution")), [&] {
        const Scatterer sc(curve, kappa, n);
        const CauchyData4 exact = point_source_cauchy_data(bd, kappa, source);
        const TraceSolution ts = sc.solve(BoundaryData{exact.v, exact.dn_v});
        detail::Outcome out;
        const std::vector<Point2> pts = exterior_probe_points(curve, 20, 1.6, 0.05);
        const std::vector<FieldSample> field = sc.field(ts, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
          const Complex u = green_biharmonic(kappa, source, pts[i]);
          out.residual = std::max(out.residual, std::abs(field[i].u - u) / std::abs(u));
        }
        double trace_error = 0.0;
        for (std::size_t j = 0; j < bd.size(); ++j) {
          const Complex expected = -green_helmholtz(kappa, source, bd.points[j]) / (2.0 * kappa.squared());
          trace_error = std::max(trace_error, std::abs(ts.a[static_cast<Eigen::Index>(j)] - expected));
        }
        out.metrics["helmholtz_trace_error"] = trace_error;
        out.metrics["condition_estimate"] = sc.solver().condition_estimate();
        return out;
      });
}

// u^∞ from the four biharmonic traces equals u_H^∞ from the Helmholtz traces.
inline CheckReport check_farfield_equivalence(const Scene& scene, std::optional<double> tolerance = {}) {
  const Wavenumber kappa(scene.kappa);
  const Curve curve(scene.shape);
  return detail::run_check(
      "farfield_equivalence", describe(scene),
      tolerance.value_or(default_tolerance("farfield_equivalence")), [&] {
        const Scatterer sc(curve, kappa, scene.n);
        const TraceSolution ts = sc.solve(scene.incident);
        const std::vector<Direction> dirs = uniform_directions(360);
        const FarField bi = farfield_biharmonic(ts, sc.boundary(), kappa, dirs);
        const FarField h = farfield_H(ts, sc.boundary(), kappa, dirs);
        detail::Outcome out;
        out.residual = detail::max_abs_diff(bi.values, h.values);
        double peak = 0.0;
        for (const Complex& v : h.values) peak = std::max(peak, std::abs(v));
        out.metrics["max_abs_farfield"] = peak;
        return out;
      });
}

// Plane-wave far field on a centered circle against the Fourier–Bessel series.
inline CheckReport check_circle_oracle_farfield(double radius, Wavenumber kappa, double theta_d,
                                                int n, int order, std::size_t directions = 360,
                                                std::optional<double> tolerance = {}) {
  const ShapeSpec shape{ShapeKind::Circle, {0.0, 0.0}, radius, radius};
  std::ostringstream extra;
  extra.precision(17);
  extra << "incident=plane wave theta=" << theta_d << "; oracle order=" << order;
  return detail::run_check(
      "circle_oracle_farfield", describe_scene(shape, kappa.value(), n, extra.str()),
      tolerance.value_or(default_tolerance("circle_oracle_farfield")), [&] {
        const Scatterer sc(Curve(shape), kappa, n);
        const TraceSolution ts = sc.solve(PlaneWave{Direction(theta_d)});
        const std::vector<Direction> dirs = uniform_directions(directions);
        const FarField numeric = sc.farfield(ts, dirs);
        const FarField exact = mie_farfield(mie_solve(radius, kappa, theta_d, order), dirs);
        detail::Outcome out;
        out.residual = detail::max_abs_diff(numeric.values, exact.values);
        out.metrics["condition_estimate"] = sc.solver().condition_estimate();
        return out;
      });
}

// Scattered field (both components) on a centered circle against the series.
inline CheckReport check_circle_oracle_field(double radius, Wavenumber kappa, double theta_d, int n,
                                             int order, std::optional<double> tolerance = {}) {
  const ShapeSpec shape{ShapeKind::Circle, {0.0, 0.0}, radius, radius};
  std::ostringstream extra;
  extra.precision(17);
  extra << "incident=plane wave theta=" << theta_d << "; oracle order=" << order;
  return detail::run_check(
      "circle_oracle_field", describe_scene(shape, kappa.value(), n, extra.str()),
      tolerance.value_or(default_tolerance("circle_oracle_field")), [&] {
        const Curve curve(shape);
        const Scatterer sc(curve, kappa, n);
        const TraceSolution ts = sc.solve(PlaneWave{Direction(theta_d)});
        std::vector<Point2> pts = exterior_probe_points(curve, 10, 1.5, 0.2);
        const std::vector<Point2> far = exterior_probe_points(curve, 10, 3.0, 0.5);
        pts.insert(pts.end(), far.begin(), far.end());
        const std::vector<FieldSample> numeric = sc.field(ts, pts);
        const std::vector<MieFieldSample> exact = mie_field(mie_solve(radius, kappa, theta_d, order), pts);
        detail::Outcome out;
        double worst_m = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          out.residual = std::max(out.residual, std::abs(numeric[i].u - exact[i].u));
          worst_m = std::max(worst_m, std::abs(numeric[i].uM - exact[i].uM));
        }
        out.metrics["max_abs_error_uM"] = worst_m;
        return out;
      });
}

// √(8κπ) e^{-iπ/4} w_H^∞(-d, z) = u^s_H(z, d)  and
// √(8κπ) e^{-iπ/4} v_H^∞(-d, z) = -u^s(z, d) / (2κ²).
inline CheckReport check_mixed_reciprocity(const Curve& curve, Wavenumber kappa, int n, Point2 z,
                                           const std::vector<Direction>& dirs,
                                           std::optional<double> tolerance = {}) {
  if (dirs.empty()) throw ValidationError("mixed reciprocity needs at least one direction");
  if (!is_exterior(discretize(curve, n), z, kMinEvaluationDistance)) {
    throw ValidationError("reciprocity point " + detail::format_point(z) +
                          " must lie outside the cavity with clearance");
  }
  std::ostringstream extra;
  extra << "z=" << detail::format_point(z) << "; directions=" << dirs.size();
  return detail::run_check(
      "mixed_reciprocity", describe_scene(curve.spec(), kappa.value(), n, extra.str()),
      tolerance.value_or(default_tolerance("mixed_reciprocity")), [&] {
        const Scatterer sc(curve, kappa, n);
        const Complex inv_gamma = 1.0 / farfield_constant(kappa);
        const TraceSolution wH = sc.solve(PointSourceH{z});
        const TraceSolution vB = sc.solve(PointSourceBi{z});
        std::vector<Direction> back;
        for (const Direction& d : dirs) back.push_back(d.opposite());
        const FarField wff = sc.farfield(wH, back);
        const FarField vff = sc.farfield(vB, back);
        detail::Outcome out;
        double rel1 = 0.0;
        double rel2 = 0.0;
        double signal = 0.0;
        const std::vector<Point2> at_z{z};
        for (std::size_t i = 0; i < dirs.size(); ++i) {
          const TraceSolution us = sc.solve(PlaneWave{dirs[i]});
          const FieldSample f = sc.field(us, at_z).front();
          const Complex lhs1 = inv_gamma * wff.values[i];
          const Complex lhs2 = inv_gamma * vff.values[i];
          const Complex rhs2 = -f.u / (2.0 * kappa.squared());
          const double e1 = std::abs(lhs1 - f.uH);
          const double e2 = std::abs(lhs2 - rhs2);
          out.residual = std::max({out.residual, e1, e2});
          rel1 = std::max(rel1, e1 / std::abs(f.uH));
          rel2 = std::max(rel2, e2 / std::abs(rhs2));
          signal = std::max(signal, std::abs(f.uH));
        }
        out.metrics["relative_residual_helmholtz"] = rel1;
        out.metrics["relative_residual_biharmonic"] = rel2;
        out.metrics["max_abs_uH_at_z"] = signal;
        return out;
      });
}

enum class SymmetryComponent { Helmholtz, Modified, Biharmonic };

inline std::string to_string(SymmetryComponent c) {
  switch (c) {
    case SymmetryComponent::Helmholtz: return "H";
    case SymmetryComponent::Modified: return "M";
    case SymmetryComponent::Biharmonic: return "Bi";
  }
  return "?";
}

// w^s_σ for the source G_σ (σ = H, M), or v^s for the source G, is symmetric in
// source and receiver.
inline CheckReport check_symmetry(const Curve& curve, Wavenumber kappa, int n, Point2 x, Point2 z,
                                  SymmetryComponent which, std::optional<double> tolerance = {}) {
  if (distance(x, z) == 0.0) throw ValidationError("symmetry check needs distinct points x and z");
  const DiscreteBoundary bd = discretize(curve, n);
  for (const Point2& p : {x, z}) {
    if (!is_exterior(bd, p, kMinEvaluationDistance)) {
      throw ValidationError("symmetry point " + detail::format_point(p) +
                            " must lie outside the cavity with clearance");
    }
  }
  std::ostringstream extra;
  extra << "component=" << to_string(which) << "; x=" << detail::format_point(x)
        << "; z=" << detail::format_point(z);
  return detail::run_check(
      "symmetry", describe_scene(curve.spec(), kappa.value(), n, extra.str()),
      tolerance.value_or(default_tolerance("symmetry")), [&] {
        const Scatterer sc(curve, kappa, n);
        auto source = [&](Point2 p) -> IncidentField {
          switch (which) {
            case SymmetryComponent::Helmholtz: return PointSourceH{p};
            case SymmetryComponent::Modified: return PointSourceM{p};
            case SymmetryComponent::Biharmonic: return PointSourceBi{p};
          }
          return PointSourceBi{p};
        };
        auto pick = [&](const FieldSample& f) {
          switch (which) {
            case SymmetryComponent::Helmholtz: return f.uH;
            case SymmetryComponent::Modified: return f.uM;
            case SymmetryComponent::Biharmonic: return f.u;
          }
          return Complex{};
        };
        const std::vector<Point2> at_x{x};
        const std::vector<Point2> at_z{z};
        const Complex xz = pick(sc.field(sc.solve(source(z)), at_x).front());
        const Complex zx = pick(sc.field(sc.solve(source(x)), at_z).front());
        detail::Outcome out;
        out.residual = std::abs(xz - zx);
        out.metrics["magnitude"] = std::abs(xz);
        return out;
      });
}

// u^∞(x̂; D+h) = e^{iκ(d - x̂)·h} u^∞(x̂; D); the phaseless residual is reported
// as a metric and never exceeds the phase-aware one.
inline CheckReport check_translation_invariance(const Curve& curve, Wavenumber kappa, int n,
                                                Point2 h, double theta_d,
                                                std::optional<double> tolerance = {}) {
  std::ostringstream extra;
  extra.precision(17);
  extra << "h=" << detail::format_point(h) << "; incident=plane wave theta=" << theta_d;
  return detail::run_check(
      "translation_invariance", describe_scene(curve.spec(), kappa.value(), n, extra.str()),
      tolerance.value_or(default_tolerance("translation_invariance")), [&] {
        const Direction d(theta_d);
        const std::vector<Direction> dirs = uniform_directions(360);
        const Scatterer base(curve, kappa, n);
        const Scatterer moved(translate(curve, h), kappa, n);
        const FarField f0 = base.farfield(base.solve(PlaneWave{d}), dirs);
        const FarField fh = moved.farfield(moved.solve(PlaneWave{d}), dirs);
        detail::Outcome out;
        double phaseless = 0.0;
        for (std::size_t i = 0; i < dirs.size(); ++i) {
          const Complex shift = std::polar(1.0, kappa.value() * dot(d.unit() - dirs[i].unit(), h));
          out.residual = std::max(out.residual, std::abs(fh.values[i] - shift * f0.values[i]));
          phaseless = std::max(phaseless, std::abs(std::abs(fh.values[i]) - std::abs(f0.values[i])));
        }
        out.metrics["phaseless_residual"] = phaseless;
        return out;
      });
}

// |u^s_M(r x̂)| e^{κr} r^{1/2} is roughly constant along a ray.
inline CheckReport check_M_decay(const Scene& scene, Direction xhat, std::vector<double> radii,
                                 std::optional<double> tolerance = {}) {
  const Wavenumber kappa(scene.kappa);
  const Curve curve(scene.shape);
  if (radii.size() < 2) throw ValidationError("decay check needs at least two radii");
  if (!std::is_sorted(radii.begin(), radii.end())) throw ValidationError("decay radii must increase");
  if (radii.front() < 3.0 * curve.scale()) {
    throw ValidationError("decay radii must be at least 3 times the shape scale");
  }
  return detail::run_check(
      "m_decay", describe(scene), tolerance.value_or(default_tolerance("m_decay")), [&] {
        const Scatterer sc(curve, kappa, scene.n);
        const TraceSolution ts = sc.solve(scene.incident);
        detail::Outcome out;
        std::vector<double> envelope;
        std::vector<double> used;
        for (double r : radii) {
          const Point2 p = curve.center() + r * xhat.unit();
          const std::vector<Point2> pts{p};
          const double uM = std::abs(sc.field(ts, pts).front().uM);
          const double c = uM * std::exp(kappa.value() * r) * std::sqrt(r);
          if (uM == 0.0 || !std::isfinite(c)) {
            out.note += "dropped radius " + std::to_string(r) + " (underflow); ";
            continue;
          }
          envelope.push_back(c);
          used.push_back(r);
        }
        if (envelope.empty()) {
          out.note += "zero signal: u^s_M vanishes on all radii";
          out.metrics["zero_signal"] = 1.0;
          return out;
        }
        const auto [lo, hi] = std::minmax_element(envelope.begin(), envelope.end());
        out.residual = (*hi - *lo) / *hi;
        out.metrics["envelope_min"] = *lo;
        out.metrics["envelope_max"] = *hi;
        out.metrics["radii_used"] = static_cast<double>(used.size());
        return out;
      });
}

// e(r) = |r^{1/2} e^{-iκr} u^s(r x̂) - u^∞(x̂)| halves when r doubles; the
// residual is |e(r)/e(2r) - 2|.
inline CheckReport check_asymptotic_expansion(const Scene& scene, Direction xhat, double r,
                                              std::optional<double> tolerance = {}) {
  const Wavenumber kappa(scene.kappa);
  const Curve curve(scene.shape);
  if (r < 25.0 * curve.scale()) {
    throw ValidationError("asymptotic radius must be at least 25 times the shape scale");
  }
  return detail::run_check(
      "asymptotic_expansion", describe(scene),
      tolerance.value_or(default_tolerance("asymptotic_expansion")), [&] {
        const Scatterer sc(curve, kappa, scene.n);
        const TraceSolution ts = sc.solve(scene.incident);
        const std::vector<double> radii{r, 2.0 * r};
        const std::vector<Complex> samples = asymptotic_extract(ts, sc.boundary(), kappa, xhat, radii);
        const std::vector<Direction> dir{xhat};
        const Complex uinf = sc.farfield(ts, dir).values.front();
        const double e1 = std::abs(samples[0] - uinf);
        const double e2 = std::abs(samples[1] - uinf);
        detail::Outcome out;
        out.metrics["error_r"] = e1;
        out.metrics["error_2r"] = e2;
        if (e1 < 1e-10 && e2 < 1e-10) {
          out.note = "both remainders below 1e-10";
          return out;
        }
        out.metrics["ratio"] = e1 / e2;
        out.residual = std::abs(e1 / e2 - 2.0);
        return out;
      });
}

// Ratio of successive far-field differences over n, 2n, 4n.
inline CheckReport check_self_convergence(const Curve& curve, Wavenumber kappa, int n, double theta_d,
                                          std::optional<double> tolerance = {}) {
  std::ostringstream extra;
  extra.precision(17);
  extra << "levels n,2n,4n; incident=plane wave theta=" << theta_d;
  return detail::run_check(
      "self_convergence", describe_scene(curve.spec(), kappa.value(), n, extra.str()),
      tolerance.value_or(default_tolerance("self_convergence")), [&] {
        const std::vector<Direction> dirs = uniform_directions(360);
        std::vector<std::vector<Complex>> levels;
        for (int level : {n, 2 * n, 4 * n}) {
          const Scatterer sc(curve, kappa, level);
          levels.push_back(sc.farfield(sc.solve(PlaneWave{Direction(theta_d)}), dirs).values);
        }
        const double coarse = detail::max_abs_diff(levels[0], levels[1]);
        const double fine = detail::max_abs_diff(levels[1], levels[2]);
        detail::Outcome out;
        out.metrics["difference_n_2n"] = coarse;
        out.metrics["difference_2n_4n"] = fine;
        out.residual = coarse > 0.0 ? fine / coarse : (fine > 0.0 ? 1.0 : 0.0);
        return out;
      });
}

// Receiver grid Ξ, source grid Λ and the reference source z0.
struct PhaselessConfig {
  Point2 z0;
  std::vector<Point2> receivers;  // Ξ
  std::vector<Point2> sources;    // Λ
};

struct PhaselessData {
  std::vector<double> single;      // |v(x, z0)|, x ∈ Ξ
  std::vector<double> pairs;       // |v(x, z)|, row-major over Ξ × Λ
  std::vector<double> superposed;  // |v(x, z0) + v(x, z)|
};

inline void validate_phaseless(const PhaselessConfig& cfg, const std::vector<const DiscreteBoundary*>& grids) {
  std::vector<std::string> problems;
  if (cfg.receivers.empty() || cfg.sources.empty()) problems.push_back("receiver and source grids must be nonempty");
  auto check_exterior = [&](Point2 p, const std::string& what) {
    for (const DiscreteBoundary* bd : grids) {
      if (!is_exterior(*bd, p, kMinEvaluationDistance)) {
        problems.push_back(what + " " + detail::format_point(p) + " intersects a cavity");
        return;
      }
    }
  };
  check_exterior(cfg.z0, "z0");
  for (const Point2& x : cfg.receivers) check_exterior(x, "receiver");
  for (const Point2& z : cfg.sources) check_exterior(z, "source");
  double gap = std::numeric_limits<double>::infinity();
  for (const Point2& x : cfg.receivers) {
    for (const Point2& z : cfg.sources) gap = std::min(gap, distance(x, z));
  }
  if (!(gap > 0.0)) problems.push_back("receiver grid and source grid overlap (Lambda and Xi must be disjoint)");
  for (const Point2& x : cfg.receivers) {
    if (distance(x, cfg.z0) == 0.0) problems.push_back("z0 coincides with a receiver");
  }
  for (const Point2& z : cfg.sources) {
    if (distance(z, cfg.z0) == 0.0) problems.push_back("z0 coincides with a source");
  }
  if (!problems.empty()) {
    std::string msg = "phaseless configuration violates:";
    for (const auto& p : problems) msg += " [" + p + "]";
    throw ValidationError(msg);
  }
}

// Magnitudes of the total fields v = v^s + G for sources z0 and z ∈ Λ at x ∈ Ξ.
inline PhaselessData phaseless_data(const Scatterer& sc, const PhaselessConfig& cfg) {
  const Wavenumber kappa = sc.kappa();
  auto total = [&](Point2 source) {
    const TraceSolution ts = sc.solve(PointSourceBi{source});
    const std::vector<FieldSample> f = sc.field(ts, cfg.receivers);
    std::vector<Complex> v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v[i] = f[i].u + green_biharmonic(kappa, cfg.receivers[i], source);
    return v;
  };
  const std::vector<Complex> v0 = total(cfg.z0);
  PhaselessData data;
  data.single.reserve(v0.size());
  for (const Complex& v : v0) data.single.push_back(std::abs(v));
  const std::size_t nx = cfg.receivers.size();
  const std::size_t nz = cfg.sources.size();
  data.pairs.resize(nx * nz);
  data.superposed.resize(nx * nz);
  for (std::size_t s = 0; s < nz; ++s) {
    const std::vector<Complex> vz = total(cfg.sources[s]);
    for (std::size_t i = 0; i < nx; ++i) {
      data.pairs[i * nz + s] = std::abs(vz[i]);
      data.superposed[i * nz + s] = std::abs(v0[i] + vz[i]);
    }
  }
  return data;
}

inline double phaseless_difference(const PhaselessData& a, const PhaselessData& b) {
  double worst = 0.0;
  auto fold = [&](const std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  };
  fold(a.single, b.single);
  fold(a.pairs, b.pairs);
  fold(a.superposed, b.superposed);
  return worst;
}

// Max difference of the three phaseless datasets between two cavities (each
// solved at its own discretization level).
inline CheckReport phaseless_discrepancy(const Curve& curve1, int n1, const Curve& curve2, int n2,
                                         Wavenumber kappa, const PhaselessConfig& cfg,
                                         std::optional<double> tolerance = {}) {
  const DiscreteBoundary b1 = discretize(curve1, n1);
  const DiscreteBoundary b2 = discretize(curve2, n2);
  validate_phaseless(cfg, {&b1, &b2});
  std::ostringstream scene;
  scene.precision(17);
  scene << "cavity 1: " << describe(curve1.spec()) << " n=" << n1 << "; cavity 2: "
        << describe(curve2.spec()) << " n=" << n2 << "; kappa=" << kappa.value()
        << "; z0=" << detail::format_point(cfg.z0) << "; |Xi|=" << cfg.receivers.size()
        << "; |Lambda|=" << cfg.sources.size();
  return detail::run_check("phaseless_identical", scene.str(),
                           tolerance.value_or(default_tolerance("phaseless_identical")), [&] {
                             const Scatterer s1(curve1, kappa, n1);
                             const Scatterer s2(curve2, kappa, n2);
                             detail::Outcome out;
                             out.residual = phaseless_difference(phaseless_data(s1, cfg), phaseless_data(s2, cfg));
                             return out;
                           });
}

inline CheckReport phaseless_discrepancy(const Curve& curve1, const Curve& curve2, Wavenumber kappa,
                                         int n, const PhaselessConfig& cfg,
                                         std::optional<double> tolerance = {}) {
  return phaseless_discrepancy(curve1, n, curve2, n, kappa, cfg, tolerance);
}

// Distinct cavities must produce a discrepancy far above the identical-cavity
// floor, measured as the change of cavity 1's data between n and 2n.
// Residual = floor / signal.
inline CheckReport check_phaseless_distinguishability(const Curve& curve1, const Curve& curve2,
                                                      Wavenumber kappa, int n,
                                                      const PhaselessConfig& cfg,
                                                      std::optional<double> tolerance = {}) {
  const CheckReport floor = phaseless_discrepancy(curve1, n, curve1, 2 * n, kappa, cfg);
  const CheckReport signal = phaseless_discrepancy(curve1, n, curve2, n, kappa, cfg);
  CheckReport report;
  report.name = "phaseless_distinguishability";
  report.scene = signal.scene;
  report.tolerance = tolerance.value_or(default_tolerance("phaseless_distinguishability"));
  report.residual = signal.residual > 0.0 ? floor.residual / signal.residual
                                          : std::numeric_limits<double>::infinity();
  report.pass = report.residual <= report.tolerance;
  report.wall_time_s = floor.wall_time_s + signal.wall_time_s;
  report.metrics["identical_cavity_discrepancy"] = floor.residual;
  report.metrics["distinct_cavity_discrepancy"] = signal.residual;
  return report;
}

}  // namespace biharm
