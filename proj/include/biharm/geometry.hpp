#pragma once

// Analytic closed boundary curves and their equispaced Nyström discretization.
// Every shipped curve is parametrized counterclockwise over [0, 2π), so the
// normal (x2', -x1')/|x'| points out of the enclosed domain.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "biharm/core.hpp"

namespace biharm {

enum class ShapeKind { Circle, Ellipse, Kite, Peanut };

inline std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::Circle: return "circle";
    case ShapeKind::Ellipse: return "ellipse";
    case ShapeKind::Kite: return "kite";
    case ShapeKind::Peanut: return "peanut";
  }
  return "unknown";
}

inline ShapeKind shape_kind_from_string(const std::string& name) {
  if (name == "circle") return ShapeKind::Circle;
  if (name == "ellipse") return ShapeKind::Ellipse;
  if (name == "kite") return ShapeKind::Kite;
  if (name == "peanut") return ShapeKind::Peanut;
  throw ValidationError("unknown shape '" + name + "' (expected circle, ellipse, kite or peanut)");
}

// Shape tag plus parameters. For circles only `a` (the radius) is used; for
// ellipses `a`, `b` are the semi-axes; kite and peanut use `a` as the scale.
struct ShapeSpec {
  ShapeKind kind = ShapeKind::Circle;
  Point2 center{};
  double a = 1.0;
  double b = 1.0;

  bool operator==(const ShapeSpec&) const = default;
};

struct CurveSample {
  Point2 x;    // x(t)
  Point2 dx;   // x'(t)
  Point2 ddx;  // x''(t)
};

class Curve {
 public:
  explicit Curve(ShapeSpec spec) : spec_(spec) {
    const bool needs_b = spec.kind == ShapeKind::Ellipse;
    if (!(spec.a > 0.0) || (needs_b && !(spec.b > 0.0)) || !std::isfinite(spec.a) ||
        !std::isfinite(spec.b)) {
      throw ValidationError("shape size parameters must be positive and finite");
    }
    if (!std::isfinite(spec.center.x1) || !std::isfinite(spec.center.x2)) {
      throw ValidationError("shape center must be finite");
    }
    bounding_radius_ = 0.0;
    constexpr int kSamples = 1024;
    for (int j = 0; j < kSamples; ++j) {
      const double t = 2.0 * kPi * j / kSamples;
      bounding_radius_ = std::max(bounding_radius_, norm(local(t).x));
    }
  }

  const ShapeSpec& spec() const { return spec_; }
  Point2 center() const { return spec_.center; }

  // Radius of the smallest center-based disk containing the curve (sampled).
  double scale() const { return bounding_radius_; }

  CurveSample sample(double t) const {
    CurveSample s = local(t);
    s.x = s.x + spec_.center;
    return s;
  }

  Curve translated(Point2 h) const {
    ShapeSpec moved = spec_;
    moved.center = spec_.center + h;
    return Curve(moved);
  }

 private:
  // Parametrization relative to the center.
  CurveSample local(double t) const {
    const double c = std::cos(t);
    const double s = std::sin(t);
    switch (spec_.kind) {
      case ShapeKind::Circle: {
        const double R = spec_.a;
        return {{R * c, R * s}, {-R * s, R * c}, {-R * c, -R * s}};
      }
      case ShapeKind::Ellipse: {
        const double a = spec_.a;
        const double b = spec_.b;
        return {{a * c, b * s}, {-a * s, b * c}, {-a * c, -b * s}};
      }
      case ShapeKind::Kite: {
        const double k = spec_.a;
        const double c2 = std::cos(2.0 * t);
        const double s2 = std::sin(2.0 * t);
        return {{k * (c + 0.65 * c2 - 0.65), k * 1.5 * s},
                {k * (-s - 1.3 * s2), k * 1.5 * c},
                {k * (-c - 2.6 * c2), -k * 1.5 * s}};
      }
      case ShapeKind::Peanut: {
        // ρ(t) = scale·sqrt(q), q = cos²t + 0.25 sin²t
        const double k = spec_.a;
        const double q = 1.0 - 0.75 * s * s;
        const double dq = -0.75 * std::sin(2.0 * t);
        const double ddq = -1.5 * std::cos(2.0 * t);
        const double sq = std::sqrt(q);
        const double rho = k * sq;
        const double drho = k * dq / (2.0 * sq);
        const double ddrho = k * (ddq / (2.0 * sq) - dq * dq / (4.0 * q * sq));
        return {{rho * c, rho * s},
                {drho * c - rho * s, drho * s + rho * c},
                {ddrho * c - 2.0 * drho * s - rho * c, ddrho * s + 2.0 * drho * c - rho * s}};
      }
    }
    return {};
  }

  ShapeSpec spec_;
  double bounding_radius_ = 0.0;
};

inline Curve make_shape(const ShapeSpec& spec) { return Curve(spec); }

inline Curve translate(const Curve& curve, Point2 h) { return curve.translated(h); }

// Quadrature grid of 2n equispaced parameter nodes t_j = jπ/n.
struct DiscreteBoundary {
  int n = 0;
  std::vector<double> t;
  std::vector<Point2> points;
  std::vector<Point2> tangents;  // x'(t_j)
  std::vector<Point2> second;    // x''(t_j)
  std::vector<double> speed;     // |x'(t_j)|
  std::vector<Point2> normals;   // outward unit normals
  std::vector<double> curvature;
  double scale = 1.0;

  std::size_t size() const { return points.size(); }
  // Trapezoidal weight in the parameter variable.
  double weight() const { return kPi / n; }
};

inline DiscreteBoundary discretize(const Curve& curve, int n) {
  if (n < 8) throw ValidationError("discretization parameter n must be at least 8");
  DiscreteBoundary bd;
  bd.n = n;
  bd.scale = curve.scale();
  const std::size_t count = 2 * static_cast<std::size_t>(n);
  bd.t.resize(count);
  bd.points.resize(count);
  bd.tangents.resize(count);
  bd.second.resize(count);
  bd.speed.resize(count);
  bd.normals.resize(count);
  bd.curvature.resize(count);
  for (std::size_t j = 0; j < count; ++j) {
    const double t = kPi * static_cast<double>(j) / n;
    const CurveSample s = curve.sample(t);
    const double speed = norm(s.dx);
    if (!(speed > 0.0)) throw ValidationError("curve parametrization is not regular");
    bd.t[j] = t;
    bd.points[j] = s.x;
    bd.tangents[j] = s.dx;
    bd.second[j] = s.ddx;
    bd.speed[j] = speed;
    bd.normals[j] = {s.dx.x2 / speed, -s.dx.x1 / speed};
    bd.curvature[j] = (s.dx.x1 * s.ddx.x2 - s.dx.x2 * s.ddx.x1) / (speed * speed * speed);
  }
  return bd;
}

inline double perimeter(const DiscreteBoundary& bd) {
  double sum = 0.0;
  for (double s : bd.speed) sum += s;
  return sum * bd.weight();
}

// Signed area from the parametrization, (1/2)∮ (x1 x2' - x2 x1') dt.
inline double signed_area(const DiscreteBoundary& bd) {
  double sum = 0.0;
  for (std::size_t j = 0; j < bd.size(); ++j) {
    sum += bd.points[j].x1 * bd.tangents[j].x2 - bd.points[j].x2 * bd.tangents[j].x1;
  }
  return 0.5 * sum * bd.weight();
}

inline Point2 centroid(const DiscreteBoundary& bd) {
  // Area centroid via ∮ x1² dx2 / 2 and -∮ x2² dx1 / 2.
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t j = 0; j < bd.size(); ++j) {
    const Point2 p = bd.points[j];
    cx += 0.5 * p.x1 * p.x1 * bd.tangents[j].x2;
    cy -= 0.5 * p.x2 * p.x2 * bd.tangents[j].x1;
  }
  const double area = signed_area(bd);
  return {cx * bd.weight() / area, cy * bd.weight() / area};
}

inline double min_distance_to_nodes(const DiscreteBoundary& bd, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point2& q : bd.points) best = std::min(best, distance(p, q));
  return best;
}

// Winding number of the node polygon around p (nonzero means inside).
inline int winding_number(const DiscreteBoundary& bd, Point2 p) {
  int wn = 0;
  const std::size_t count = bd.size();
  for (std::size_t j = 0; j < count; ++j) {
    const Point2 a = bd.points[j];
    const Point2 b = bd.points[(j + 1) % count];
    const double cross = (b.x1 - a.x1) * (p.x2 - a.x2) - (p.x1 - a.x1) * (b.x2 - a.x2);
    if (a.x2 <= p.x2) {
      if (b.x2 > p.x2 && cross > 0.0) ++wn;
    } else {
      if (b.x2 <= p.x2 && cross < 0.0) --wn;
    }
  }
  return wn;
}

inline bool is_inside(const DiscreteBoundary& bd, Point2 p) { return winding_number(bd, p) != 0; }

// Strictly outside the closed domain with a clearance relative to the shape scale.
inline bool is_exterior(const DiscreteBoundary& bd, Point2 p, double relative_clearance = 1e-6) {
  return !is_inside(bd, p) && min_distance_to_nodes(bd, p) >= relative_clearance * bd.scale;
}

}  // namespace biharm
