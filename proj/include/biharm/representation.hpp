#pragma once

// Boundary functionals of the biharmonic Green's representations:
//
//   W(v, ∂_n v)(x) = ∮ { (P_y G) ∂_n v + (Q_y G) v } ds(y)
//   U(Pv, Qv)(x)   = ∮ { G Qv + (∂G/∂n(y)) Pv } ds(y)
//
// Inside the cavity an entire field satisfies u = W - U; outside, a radiating
// field satisfies u = U - W. The sign convention is applied by the callers.

#include <cmath>
#include <span>
#include <vector>

#include "biharm/cauchy_data.hpp"
#include "biharm/geometry.hpp"
#include "biharm/kernels.hpp"
#include "biharm/solver.hpp"

namespace biharm {

namespace detail {
inline void require_off_boundary(const DiscreteBoundary& bd, Point2 x) {
  // The trapezoidal rule is only meaningful away from the nodes.
  if (min_distance_to_nodes(bd, x) < 1e-10 * bd.scale) {
    throw DomainError("representation evaluated on the boundary at " + format_point(x));
  }
}
inline void require_matching(const CauchyData4& data, const DiscreteBoundary& bd) {
  const auto count = static_cast<Eigen::Index>(bd.size());
  if (data.v.size() != count || data.dn_v.size() != count || data.Pv.size() != count ||
      data.Qv.size() != count) {
    throw ValidationError("Cauchy data length does not match the node count");
  }
}
}  // namespace detail

inline Complex eval_W(const CauchyData4& data, const DiscreteBoundary& bd, Wavenumber kappa,
                      Point2 x) {
  detail::require_matching(data, bd);
  detail::require_off_boundary(bd, x);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < bd.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const LaplacianTraces pq = green_laplacian_traces(kappa, x, bd.points[j], bd.normals[j]);
    sum += bd.speed[j] * (pq.P * data.dn_v[jj] + pq.Q * data.v[jj]);
  }
  return bd.weight() * sum;
}

inline Complex eval_U(const CauchyData4& data, const DiscreteBoundary& bd, Wavenumber kappa,
                      Point2 x) {
  detail::require_matching(data, bd);
  detail::require_off_boundary(bd, x);
  Complex sum = 0.0;
  for (std::size_t j = 0; j < bd.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    const Point2 y = bd.points[j];
    const Complex g = green_biharmonic(kappa, x, y);
    const Complex dg = green_normal_derivative(KernelKind::Biharmonic, kappa, x, y, bd.normals[j]);
    sum += bd.speed[j] * (g * data.Qv[jj] + dg * data.Pv[jj]);
  }
  return bd.weight() * sum;
}

// r^{1/2} e^{-iκr} u^s(r x̂) for each radius; tends to u^∞(x̂) as r grows.
inline std::vector<Complex> asymptotic_extract(const TraceSolution& ts, const DiscreteBoundary& bd,
                                               Wavenumber kappa, Direction xhat,
                                               std::span<const double> radii) {
  std::vector<Point2> points;
  points.reserve(radii.size());
  for (double r : radii) {
    if (!(r >= 10.0 * bd.scale)) {
      throw ValidationError("asymptotic radius must be at least 10 times the shape scale");
    }
    points.push_back(r * xhat.unit());
  }
  const std::vector<FieldSample> field = eval_scattered(ts, bd, kappa, points);
  std::vector<Complex> out(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    out[i] = std::sqrt(r) * std::polar(1.0, -kappa.value() * r) * field[i].u;
  }
  return out;
}

}  // namespace biharm
