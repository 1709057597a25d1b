#pragma once

// Fourier–Bessel solution for a plane wave scattered by a clamped circular
// cavity of radius R centered at the origin:
//
//   u^s = Σ_m a_m H_m(κr) e^{imθ} + Σ_m b_m K_m(κr) e^{imθ},
//
// with each mode fixed by u^s = -u^i, ∂_r u^s = -∂_r u^i on r = R and
// e^{iκd·x} = Σ_m i^m J_m(κr) e^{im(θ-θ_d)}.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "biharm/core.hpp"
#include "biharm/solver.hpp"
#include "biharm/special.hpp"

namespace biharm {

struct MieSolution {
  double radius = 1.0;
  double kappa = 1.0;
  double theta_d = 0.0;
  int order = 0;             // truncation M; modes -M..M
  std::vector<Complex> a;    // Hankel channel, index m + M
  std::vector<Complex> b;    // modified channel, index m + M
  double max_residual = 0.0;  // worst per-mode 2x2 residual

  Complex a_mode(int m) const { return a[static_cast<std::size_t>(m + order)]; }
  Complex b_mode(int m) const { return b[static_cast<std::size_t>(m + order)]; }
};

inline Complex i_pow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline MieSolution mie_solve(double radius, Wavenumber kappa, double theta_d, int order) {
  if (!(radius > 0.0)) throw ValidationError("circle radius must be positive");
  const double k = kappa.value();
  if (order < k * radius + 20.0) {
    throw ValidationError("truncation order must be at least kappa*R + 20");
  }
  MieSolution sol{radius, k, theta_d, order, {}, {}, 0.0};
  sol.a.resize(2 * static_cast<std::size_t>(order) + 1);
  sol.b.resize(sol.a.size());
  const double kR = k * radius;
  for (int m = -order; m <= order; ++m) {
    Eigen::Matrix2cd A;
    A << special::hankel1(m, kR), special::bessel_k(m, kR),
        k * special::hankel1_prime(m, kR), k * special::bessel_k_prime(m, kR);
    const Complex phase = -i_pow(m) * std::polar(1.0, -m * theta_d);
    Eigen::Vector2cd rhs;
    rhs << phase * special::bessel_j(m, kR), phase * k * special::bessel_j_prime(m, kR);
    const Eigen::FullPivLU<Eigen::Matrix2cd> lu(A);
    if (!lu.isInvertible()) {
      throw ResonanceError("singular mode " + std::to_string(m) + " in circle oracle");
    }
    const Eigen::Vector2cd x = lu.solve(rhs);
    const double denom = A.norm() * x.norm() + rhs.norm();
    const double residual = denom > 0.0 ? (A * x - rhs).norm() / denom : 0.0;
    sol.max_residual = std::max(sol.max_residual, residual);
    sol.a[static_cast<std::size_t>(m + order)] = x[0];
    sol.b[static_cast<std::size_t>(m + order)] = x[1];
  }
  return sol;
}

inline FarField mie_farfield(const MieSolution& sol, std::span<const Direction> dirs) {
  const Complex prefactor = std::sqrt(2.0 / (kPi * sol.kappa)) * std::polar(1.0, -kPi / 4.0);
  FarField ff{{dirs.begin(), dirs.end()}, std::vector<Complex>(dirs.size())};
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    Complex sum = 0.0;
    for (int m = -sol.order; m <= sol.order; ++m) {
      sum += sol.a_mode(m) * i_pow(-m) * std::polar(1.0, m * dirs[d].theta());
    }
    ff.values[d] = prefactor * sum;
  }
  return ff;
}

struct MieFieldSample {
  Complex uH;
  Complex uM;
  Complex u;
};

inline std::vector<MieFieldSample> mie_field(const MieSolution& sol, std::span<const Point2> points) {
  std::vector<MieFieldSample> out;
  out.reserve(points.size());
  for (const Point2& x : points) {
    const double r = norm(x);
    if (r < sol.radius * (1.0 - 1e-12)) {
      throw DomainError("circle oracle evaluated inside the cavity at " + detail::format_point(x));
    }
    const double theta = std::atan2(x.x2, x.x1);
    const double kr = sol.kappa * r;
    Complex uH = 0.0;
    Complex uM = 0.0;
    for (int m = -sol.order; m <= sol.order; ++m) {
      const Complex e = std::polar(1.0, m * theta);
      uH += sol.a_mode(m) * special::hankel1(m, kr) * e;
      uM += sol.b_mode(m) * special::bessel_k(m, kr) * e;
    }
    out.push_back({uH, uM, uH + uM});
  }
  return out;
}

}  // namespace biharm
