#pragma once

// Fundamental solutions of the Helmholtz (G_H), modified Helmholtz (G_M) and
// biharmonic wave (G) operators in the plane, with the y-derivatives needed by
// layer potentials and Green's representations.
//
//   G_H(x,y) = (i/4) H0(κr),   G_M(x,y) = (1/2π) K0(κr) = (i/4) H0(iκr),
//   G(x,y)   = (G_M - G_H) / (2κ²),   r = |x - y|.
//
// Derivatives are taken by direct differentiation in y.

#include <cmath>

#include "biharm/core.hpp"
#include "biharm/special.hpp"

namespace biharm {

enum class KernelKind { Helmholtz, Modified, Biharmonic };

namespace detail {

inline double separation(Point2 x, Point2 y) {
  const double r = distance(x, y);
  if (!(r > 0.0)) throw DomainError("kernel evaluated at coincident points");
  return r;
}

}  // namespace detail

inline Complex green_helmholtz(Wavenumber kappa, Point2 x, Point2 y) {
  const double r = detail::separation(x, y);
  return 0.25 * kI * special::hankel1(0, kappa.value() * r);
}

inline Complex green_modified(Wavenumber kappa, Point2 x, Point2 y) {
  const double r = detail::separation(x, y);
  return {special::bessel_k(0, kappa.value() * r) / (2.0 * kPi), 0.0};
}

inline Complex green_biharmonic(Wavenumber kappa, Point2 x, Point2 y) {
  return (green_modified(kappa, x, y) - green_helmholtz(kappa, x, y)) / (2.0 * kappa.squared());
}

inline Complex green(KernelKind kind, Wavenumber kappa, Point2 x, Point2 y) {
  switch (kind) {
    case KernelKind::Helmholtz: return green_helmholtz(kappa, x, y);
    case KernelKind::Modified: return green_modified(kappa, x, y);
    case KernelKind::Biharmonic: return green_biharmonic(kappa, x, y);
  }
  return {};
}

// ∂G_σ(x,y)/∂n(y) for a unit normal at y.
inline Complex green_normal_derivative(KernelKind kind, Wavenumber kappa, Point2 x, Point2 y,
                                       Point2 normal_y) {
  const double r = detail::separation(x, y);
  const double k = kappa.value();
  const double cos_term = dot(normal_y, y - x) / r;
  const Complex dH = -0.25 * kI * k * special::hankel1(1, k * r) * cos_term;
  const Complex dM = -k * special::bessel_k(1, k * r) / (2.0 * kPi) * cos_term;
  switch (kind) {
    case KernelKind::Helmholtz: return dH;
    case KernelKind::Modified: return dM;
    case KernelKind::Biharmonic: return (dM - dH) / (2.0 * kappa.squared());
  }
  return {};
}

struct LaplacianTraces {
  Complex P;  // Δ_y G(x,y)
  Complex Q;  // -∂_{n(y)} Δ_y G(x,y)
};

// Uses Δ_y G_H = -κ² G_H and Δ_y G_M = κ² G_M off the diagonal.
inline LaplacianTraces green_laplacian_traces(Wavenumber kappa, Point2 x, Point2 y,
                                              Point2 normal_y) {
  const Complex gH = green_helmholtz(kappa, x, y);
  const Complex gM = green_modified(kappa, x, y);
  const Complex dH = green_normal_derivative(KernelKind::Helmholtz, kappa, x, y, normal_y);
  const Complex dM = green_normal_derivative(KernelKind::Modified, kappa, x, y, normal_y);
  return {0.5 * (gM + gH), -0.5 * (dM + dH)};
}

// e^{iπ/4}/√(8κπ): the 2-D far-field constant of G_H.
inline Complex farfield_constant(Wavenumber kappa) {
  return std::polar(1.0 / std::sqrt(8.0 * kappa.value() * kPi), kPi / 4.0);
}

struct PlaneKernel {
  Complex e;     // exp(-iκ x̂·y)
  Complex dn_e;  // ∂/∂n(y) of e
};

inline PlaneKernel plane_farfield_kernel(Wavenumber kappa, Direction xhat, Point2 y,
                                         Point2 normal_y) {
  const Point2 u = xhat.unit();
  const double k = kappa.value();
  const Complex e = std::polar(1.0, -k * dot(u, y));
  return {e, -kI * k * dot(u, normal_y) * e};
}

// Far-field pattern of the biharmonic point source G(·,z).
inline Complex point_source_farfield(Wavenumber kappa, Direction xhat, Point2 z) {
  return -farfield_constant(kappa) / (2.0 * kappa.squared()) *
         std::polar(1.0, -kappa.value() * dot(xhat.unit(), z));
}

}  // namespace biharm
