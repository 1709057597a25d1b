#pragma once

// Incident fields, the clamped boundary data they induce, and entire interior
// test fields used to exercise the Green's representation inside the cavity.

#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "biharm/cauchy_data.hpp"
#include "biharm/core.hpp"
#include "biharm/geometry.hpp"
#include "biharm/kernels.hpp"

namespace biharm {

struct PlaneWave {
  Direction direction;
};
// w^i = G_H(·, z)
struct PointSourceH {
  Point2 z;
};
// w^i = G_M(·, z)
struct PointSourceM {
  Point2 z;
};
// v^i = G(·, z)
struct PointSourceBi {
  Point2 z;
};
// v^i = G(·, z0) + G(·, z)
struct SuperpositionBi {
  Point2 z0;
  Point2 z;
};

using IncidentField =
    std::variant<PlaneWave, PointSourceH, PointSourceM, PointSourceBi, SuperpositionBi>;

// Dirichlet and Neumann data of the scattered field: f1 = -u^i, f2 = -∂_n u^i.
struct BoundaryData {
  NodeVector f1;
  NodeVector f2;
};

namespace detail {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

inline std::string format_point(Point2 p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p.x1 << ", " << p.x2 << ')';
  return os.str();
}

inline std::vector<Point2> source_points(const IncidentField& inc) {
  return std::visit(Overloaded{[](const PlaneWave&) { return std::vector<Point2>{}; },
                               [](const PointSourceH& s) { return std::vector<Point2>{s.z}; },
                               [](const PointSourceM& s) { return std::vector<Point2>{s.z}; },
                               [](const PointSourceBi& s) { return std::vector<Point2>{s.z}; },
                               [](const SuperpositionBi& s) {
                                 return std::vector<Point2>{s.z0, s.z};
                               }},
                    inc);
}
}  // namespace detail

inline std::string describe(const IncidentField& inc) {
  return std::visit(
      detail::Overloaded{
          [](const PlaneWave& p) {
            std::ostringstream os;
            os.precision(17);
            os << "plane wave theta=" << p.direction.theta();
            return os.str();
          },
          [](const PointSourceH& s) { return "Helmholtz point source at " + detail::format_point(s.z); },
          [](const PointSourceM& s) {
            return "modified Helmholtz point source at " + detail::format_point(s.z);
          },
          [](const PointSourceBi& s) { return "biharmonic point source at " + detail::format_point(s.z); },
          [](const SuperpositionBi& s) {
            return "biharmonic point sources at " + detail::format_point(s.z0) + " and " +
                   detail::format_point(s.z);
          }},
      inc);
}

// Point sources must lie outside the closed cavity with a small clearance.
inline void validate_sources(const IncidentField& inc, const DiscreteBoundary& bd) {
  for (const Point2& z : detail::source_points(inc)) {
    if (!is_exterior(bd, z)) {
      throw ValidationError("point source at " + detail::format_point(z) +
                            " is not strictly outside the cavity");
    }
  }
}

struct IncidentTrace {
  Complex u;
  Complex dn_u;
};

// Value and normal derivative of the incident field at x for the unit normal n.
inline IncidentTrace incident_trace(const IncidentField& inc, Wavenumber kappa, Point2 x, Point2 n) {
  auto point = [&](KernelKind kind, Point2 z) {
    // G is radial, so the derivative in its second slot is the derivative at x.
    return IncidentTrace{green(kind, kappa, z, x), green_normal_derivative(kind, kappa, z, x, n)};
  };
  return std::visit(
      detail::Overloaded{
          [&](const PlaneWave& p) {
            const Point2 d = p.direction.unit();
            const Complex u = std::polar(1.0, kappa.value() * dot(d, x));
            return IncidentTrace{u, kI * kappa.value() * dot(d, n) * u};
          },
          [&](const PointSourceH& s) { return point(KernelKind::Helmholtz, s.z); },
          [&](const PointSourceM& s) { return point(KernelKind::Modified, s.z); },
          [&](const PointSourceBi& s) { return point(KernelKind::Biharmonic, s.z); },
          [&](const SuperpositionBi& s) {
            const IncidentTrace a = point(KernelKind::Biharmonic, s.z0);
            const IncidentTrace b = point(KernelKind::Biharmonic, s.z);
            return IncidentTrace{a.u + b.u, a.dn_u + b.dn_u};
          }},
      inc);
}

inline BoundaryData boundary_data(const IncidentField& inc, const DiscreteBoundary& bd,
                                  Wavenumber kappa) {
  validate_sources(inc, bd);
  const auto count = static_cast<Eigen::Index>(bd.size());
  BoundaryData data{NodeVector(count), NodeVector(count)};
  for (Eigen::Index j = 0; j < count; ++j) {
    const IncidentTrace tr = incident_trace(inc, kappa, bd.points[j], bd.normals[j]);
    data.f1[j] = -tr.u;
    data.f2[j] = -tr.dn_u;
  }
  return data;
}

inline std::vector<Complex> eval_incident(const IncidentField& inc, Wavenumber kappa,
                                          std::span<const Point2> points) {
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const Point2& x : points) {
    // green() raises DomainError when x sits on a source.
    out.push_back(incident_trace(inc, kappa, x, Point2{1.0, 0.0}).u);
  }
  return out;
}

// Entire solutions of Δ²u = κ⁴u used as interior test fields.
struct EntirePlane {
  Direction direction;  // u = exp(iκ d·x), Δu = -κ²u
};
struct EntireModified {
  Direction direction;  // u = exp(κ d·x), Δu = +κ²u
};

using InteriorTestField = std::variant<EntirePlane, EntireModified>;

inline std::string describe(const InteriorTestField& f) {
  return std::visit(detail::Overloaded{[](const EntirePlane&) { return std::string("entire plane wave"); },
                                       [](const EntireModified&) {
                                         return std::string("entire modified exponential");
                                       }},
                    f);
}

inline Complex eval_interior_test(const InteriorTestField& f, Wavenumber kappa, Point2 x) {
  return std::visit(detail::Overloaded{[&](const EntirePlane& p) {
                                         return std::polar(1.0, kappa.value() * dot(p.direction.unit(), x));
                                       },
                                       [&](const EntireModified& p) {
                                         return Complex{std::exp(kappa.value() * dot(p.direction.unit(), x)), 0.0};
                                       }},
                    f);
}

inline CauchyData4 interior_test_traces(const InteriorTestField& f, const DiscreteBoundary& bd,
                                        Wavenumber kappa) {
  const auto count = static_cast<Eigen::Index>(bd.size());
  CauchyData4 data = CauchyData4::zeros(count);
  const double k = kappa.value();
  const double k2 = kappa.squared();
  for (Eigen::Index j = 0; j < count; ++j) {
    const Point2 x = bd.points[j];
    const Point2 n = bd.normals[j];
    const Complex u = eval_interior_test(f, kappa, x);
    std::visit(detail::Overloaded{[&](const EntirePlane& p) {
                                    data.v[j] = u;
                                    data.dn_v[j] = kI * k * dot(p.direction.unit(), n) * u;
                                    data.Pv[j] = -k2 * u;
                                    data.Qv[j] = k2 * data.dn_v[j];
                                  },
                                  [&](const EntireModified& p) {
                                    data.v[j] = u;
                                    data.dn_v[j] = k * dot(p.direction.unit(), n) * u;
                                    data.Pv[j] = k2 * u;
                                    data.Qv[j] = -k2 * data.dn_v[j];
                                  }},
               f);
  }
  return data;
}

}  // namespace biharm
