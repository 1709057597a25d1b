#pragma once

// Nyström solver for the clamped cavity problem, posed for the Helmholtz and
// modified Helmholtz components u^s = u^s_H + u^s_M of the scattered field.
//
// With a = u^s_H|Γ, b = ∂_n u^s_H|Γ and the coupled boundary conditions
// u^s_M|Γ = f1 - a, ∂_n u^s_M|Γ = f2 - b, the exterior trace identities of the
// two Green's representations give the 2x2 block system
//
//   (I/2 - K_H) a + S_H b = 0
//   (I/2 - K_M) a + S_M b = (I/2 - K_M) f1 + S_M f2
//
// S and K are discretized with the logarithmic-splitting trapezoidal rule on
// the 2n equispaced nodes of a DiscreteBoundary.

#include <cmath>
#include <span>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "biharm/cauchy_data.hpp"
#include "biharm/core.hpp"
#include "biharm/geometry.hpp"
#include "biharm/incident.hpp"
#include "biharm/kernels.hpp"
#include "biharm/parallel.hpp"
#include "biharm/special.hpp"

namespace biharm {

struct BoundaryOperators {
  Eigen::MatrixXcd SH;  // Helmholtz single layer
  Eigen::MatrixXcd KH;  // Helmholtz double layer
  Eigen::MatrixXcd SM;  // modified Helmholtz single layer
  Eigen::MatrixXcd KM;  // modified Helmholtz double layer
  double kappa = 1.0;

  Eigen::Index size() const { return SH.rows(); }
};

namespace detail {

// Weights R_k of ∫ ln(4 sin²((t-τ)/2)) f(τ) dτ ≈ Σ_j R_{|i-j|} f(t_j) on 2n nodes.
inline std::vector<double> log_weights(int n) {
  std::vector<double> R(2 * static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < R.size(); ++k) {
    double sum = 0.0;
    for (int m = 1; m < n; ++m) sum += std::cos(m * static_cast<double>(k) * kPi / n) / m;
    const double alternating = (k % 2 == 0) ? 1.0 : -1.0;
    R[k] = -2.0 * kPi / n * sum - kPi / (static_cast<double>(n) * n) * alternating;
  }
  return R;
}

}  // namespace detail

inline BoundaryOperators assemble(const DiscreteBoundary& bd, Wavenumber kappa) {
  if (bd.size() < 16) throw ValidationError("assembly needs at least 16 nodes");
  const auto N = static_cast<Eigen::Index>(bd.size());
  const double k = kappa.value();
  const double w = bd.weight();
  const std::vector<double> R = detail::log_weights(bd.n);
  const double inv4pi = 1.0 / (4.0 * kPi);

  BoundaryOperators ops;
  ops.kappa = k;
  ops.SH.resize(N, N);
  ops.KH.resize(N, N);
  ops.SM.resize(N, N);
  ops.KM.resize(N, N);

  parallel_for(static_cast<std::size_t>(N), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    const Point2 xi = bd.points[row];
    for (Eigen::Index j = 0; j < N; ++j) {
      const auto col = static_cast<std::size_t>(j);
      const double Rij = R[static_cast<std::size_t>(std::abs(i - j))];
      const double speed = bd.speed[col];
      const Point2 dx = bd.tangents[col];
      if (i == j) {
        const double log_term = std::log(k * speed / 2.0);
        const Complex sH1 = -inv4pi * speed;
        const Complex sH2 = (0.25 * kI - kEulerGamma / (2.0 * kPi) - log_term / (2.0 * kPi)) * speed;
        const double sM1 = -inv4pi * speed;
        const double sM2 = (-kEulerGamma / (2.0 * kPi) - log_term / (2.0 * kPi)) * speed;
        const Point2 ddx = bd.second[col];
        const double dl = (dx.x2 * ddx.x1 - dx.x1 * ddx.x2) / (4.0 * kPi * speed * speed);
        ops.SH(i, j) = Rij * sH1 + w * sH2;
        ops.SM(i, j) = Rij * sM1 + w * sM2;
        ops.KH(i, j) = w * dl;
        ops.KM(i, j) = w * dl;
        continue;
      }
      const Point2 yj = bd.points[col];
      const double r = distance(xi, yj);
      const double kr = k * r;
      const double J0 = special::bessel_j(0, kr);
      const double J1 = special::bessel_j(1, kr);
      const double Y0 = special::bessel_y(0, kr);
      const double Y1 = special::bessel_y(1, kr);
      const double K0 = special::bessel_k(0, kr);
      const double K1 = special::bessel_k(1, kr);
      const double I0 = special::bessel_i(0, kr);
      const double I1 = special::bessel_i(1, kr);
      const double ln4sin2 = std::log(4.0 * std::pow(std::sin((bd.t[row] - bd.t[col]) / 2.0), 2));
      // ñ(τ)·(x(t) - x(τ)) / r with the unnormalized normal ñ = (x2', -x1').
      const double ncos = (dx.x2 * (xi.x1 - yj.x1) - dx.x1 * (xi.x2 - yj.x2)) / r;

      const Complex sH = 0.25 * kI * Complex{J0, Y0} * speed;
      const double sH1 = -inv4pi * J0 * speed;
      const double sM = K0 / (2.0 * kPi) * speed;
      const double sM1 = -inv4pi * I0 * speed;
      const Complex kH = 0.25 * kI * k * Complex{J1, Y1} * ncos;
      const double kH1 = -k * inv4pi * J1 * ncos;
      const double kM = k / (2.0 * kPi) * K1 * ncos;
      const double kM1 = k * inv4pi * I1 * ncos;

      ops.SH(i, j) = Rij * sH1 + w * (sH - sH1 * ln4sin2);
      ops.SM(i, j) = Rij * sM1 + w * (sM - sM1 * ln4sin2);
      ops.KH(i, j) = Rij * kH1 + w * (kH - kH1 * ln4sin2);
      ops.KM(i, j) = Rij * kM1 + w * (kM - kM1 * ln4sin2);
    }
  });
  return ops;
}

struct TraceSolution {
  NodeVector a;   // u^s_H on Γ
  NodeVector b;   // ∂_n u^s_H on Γ
  NodeVector f1;  // u^s on Γ
  NodeVector f2;  // ∂_n u^s on Γ
  double kappa = 1.0;

  NodeVector uM() const { return f1 - a; }
  NodeVector dn_uM() const { return f2 - b; }
  // Δu^s = κ²(u^s_M - u^s_H)
  NodeVector lap() const { return kappa * kappa * (f1 - 2.0 * a); }
  NodeVector dn_lap() const { return kappa * kappa * (f2 - 2.0 * b); }

  CauchyData4 cauchy_data() const { return {f1, f2, lap(), -dn_lap()}; }

  static TraceSolution zeros(Eigen::Index count, double kappa) {
    const NodeVector z = NodeVector::Zero(count);
    return {z, z, z, z, kappa};
  }
};

// Factorized block system; reusable across right-hand sides on the same grid.
class TraceSolver {
 public:
  static constexpr double kMaxCondition = 1e12;

  explicit TraceSolver(BoundaryOperators ops) : ops_(std::move(ops)) {
    const Eigen::Index N = ops_.size();
    const Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(N, N);
    Eigen::MatrixXcd A(2 * N, 2 * N);
    A.topLeftCorner(N, N) = half - ops_.KH;
    A.topRightCorner(N, N) = ops_.SH;
    A.bottomLeftCorner(N, N) = half - ops_.KM;
    A.bottomRightCorner(N, N) = ops_.SM;
    lu_.compute(A);
    const double rc = lu_.rcond();
    condition_ = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(condition_ <= kMaxCondition)) {
      std::ostringstream os;
      os << "boundary integral system is numerically singular at wavenumber " << ops_.kappa
         << " (condition estimate " << condition_ << ")";
      throw ResonanceError(os.str());
    }
  }

  const BoundaryOperators& operators() const { return ops_; }
  double condition_estimate() const { return condition_; }

  TraceSolution solve(const BoundaryData& data) const {
    const Eigen::Index N = ops_.size();
    if (data.f1.size() != N || data.f2.size() != N) {
      throw ValidationError("boundary data and operators use different node grids");
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(2 * N);
    rhs.tail(N) = 0.5 * data.f1 - ops_.KM * data.f1 + ops_.SM * data.f2;
    const Eigen::VectorXcd ab = lu_.solve(rhs);
    return {ab.head(N), ab.tail(N), data.f1, data.f2, ops_.kappa};
  }

 private:
  BoundaryOperators ops_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_ = 0.0;
};

inline TraceSolution solve_traces(const BoundaryOperators& ops, const BoundaryData& data) {
  return TraceSolver(ops).solve(data);
}

struct FieldSample {
  Complex uH;
  Complex uM;
  Complex u;
  Complex lap_u;
};

// Minimum target distance from Γ, relative to the shape scale.
inline constexpr double kMinEvaluationDistance = 0.05;

inline void require_exterior_target(const DiscreteBoundary& bd, Point2 x) {
  if (is_inside(bd, x)) {
    throw DomainError("evaluation point " + detail::format_point(x) + " lies inside the cavity");
  }
  if (min_distance_to_nodes(bd, x) < kMinEvaluationDistance * bd.scale) {
    throw EvaluationDistanceError("evaluation point " + detail::format_point(x) +
                                  " is too close to the boundary");
  }
}

inline std::vector<FieldSample> eval_scattered(const TraceSolution& ts, const DiscreteBoundary& bd,
                                               Wavenumber kappa, std::span<const Point2> points) {
  for (const Point2& x : points) require_exterior_target(bd, x);
  const NodeVector uM = ts.uM();
  const NodeVector dn_uM = ts.dn_uM();
  const double w = bd.weight();
  std::vector<FieldSample> out(points.size());
  parallel_for(points.size(), [&](std::size_t p) {
    const Point2 x = points[p];
    Complex uH = 0.0;
    Complex uMx = 0.0;
    for (std::size_t j = 0; j < bd.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const Point2 y = bd.points[j];
      const Point2 n = bd.normals[j];
      const double ds = w * bd.speed[j];
      uH += ds * (ts.a[jj] * green_normal_derivative(KernelKind::Helmholtz, kappa, x, y, n) -
                  green_helmholtz(kappa, x, y) * ts.b[jj]);
      uMx += ds * (uM[jj] * green_normal_derivative(KernelKind::Modified, kappa, x, y, n) -
                   green_modified(kappa, x, y) * dn_uM[jj]);
    }
    out[p] = {uH, uMx, uH + uMx, kappa.squared() * (uMx - uH)};
  });
  return out;
}

struct FarField {
  std::vector<Direction> directions;
  std::vector<Complex> values;

  std::size_t size() const { return values.size(); }
};

inline std::vector<Direction> uniform_directions(std::size_t count) {
  std::vector<Direction> dirs;
  dirs.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    dirs.emplace_back(2.0 * kPi * static_cast<double>(j) / static_cast<double>(count));
  }
  return dirs;
}

inline FarField farfield_H(const TraceSolution& ts, const DiscreteBoundary& bd, Wavenumber kappa,
                           std::span<const Direction> dirs) {
  const Complex gamma = farfield_constant(kappa);
  FarField ff{{dirs.begin(), dirs.end()}, std::vector<Complex>(dirs.size())};
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < bd.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const PlaneKernel pk = plane_farfield_kernel(kappa, dirs[d], bd.points[j], bd.normals[j]);
      sum += bd.speed[j] * (ts.a[jj] * pk.dn_e - pk.e * ts.b[jj]);
    }
    ff.values[d] = gamma * bd.weight() * sum;
  }
  return ff;
}

// Far field from the total traces u^s, ∂_n u^s, Δu^s, ∂_n Δu^s of the biharmonic field.
inline FarField farfield_biharmonic(const TraceSolution& ts, const DiscreteBoundary& bd,
                                    Wavenumber kappa, std::span<const Direction> dirs) {
  const Complex gamma = farfield_constant(kappa);
  const NodeVector lap = ts.lap();
  const NodeVector dn_lap = ts.dn_lap();
  const double k2 = kappa.squared();
  FarField ff{{dirs.begin(), dirs.end()}, std::vector<Complex>(dirs.size())};
  for (std::size_t d = 0; d < dirs.size(); ++d) {
    Complex first = 0.0;
    Complex second = 0.0;
    for (std::size_t j = 0; j < bd.size(); ++j) {
      const auto jj = static_cast<Eigen::Index>(j);
      const PlaneKernel pk = plane_farfield_kernel(kappa, dirs[d], bd.points[j], bd.normals[j]);
      first += bd.speed[j] * (ts.f1[jj] * pk.dn_e - pk.e * ts.f2[jj]);
      second += bd.speed[j] * (lap[jj] * pk.dn_e - pk.e * dn_lap[jj]);
    }
    ff.values[d] = gamma * bd.weight() * (0.5 * first - second / (2.0 * k2));
  }
  return ff;
}

// Curve, grid, operators and factorization for one cavity at one wavenumber.
class Scatterer {
 public:
  Scatterer(const Curve& curve, Wavenumber kappa, int n)
      : curve_(curve), kappa_(kappa), bd_(discretize(curve, n)), solver_(assemble(bd_, kappa)) {}

  const Curve& curve() const { return curve_; }
  Wavenumber kappa() const { return kappa_; }
  const DiscreteBoundary& boundary() const { return bd_; }
  const TraceSolver& solver() const { return solver_; }

  TraceSolution solve(const IncidentField& inc) const {
    return solver_.solve(boundary_data(inc, bd_, kappa_));
  }
  TraceSolution solve(const BoundaryData& data) const { return solver_.solve(data); }

  std::vector<FieldSample> field(const TraceSolution& ts, std::span<const Point2> points) const {
    return eval_scattered(ts, bd_, kappa_, points);
  }
  FarField farfield(const TraceSolution& ts, std::span<const Direction> dirs) const {
    return farfield_H(ts, bd_, kappa_, dirs);
  }

 private:
  Curve curve_;
  Wavenumber kappa_;
  DiscreteBoundary bd_;
  TraceSolver solver_;
};

}  // namespace biharm
