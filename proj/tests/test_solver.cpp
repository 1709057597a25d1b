#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "biharm/solver.hpp"
#include "biharm/special.hpp"
#include "frozen_values.hpp"

using namespace biharm;

namespace {

const Curve kCircle({ShapeKind::Circle, {0.0, 0.0}, 1.0, 1.0});
const Curve kKite({ShapeKind::Kite, {0.0, 0.0}, 1.0, 1.0});

Eigen::VectorXcd fourier_mode(const DiscreteBoundary& bd, int m) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(bd.size()));
  for (std::size_t j = 0; j < bd.size(); ++j) v[static_cast<Eigen::Index>(j)] = std::polar(1.0, m * bd.t[j]);
  return v;
}

class ScopedThreads {
 public:
  explicit ScopedThreads(const char* value) {
    if (const char* old = std::getenv("BIHARM_NUM_THREADS")) saved_ = old;
    setenv("BIHARM_NUM_THREADS", value, 1);
  }
  ~ScopedThreads() {
    if (saved_.empty()) {
      unsetenv("BIHARM_NUM_THREADS");
    } else {
      setenv("BIHARM_NUM_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(LogWeights, IntegrateTrigonometricPolynomialsExactly) {
  const int n = 16;
  const std::vector<double> R = detail::log_weights(n);
  // ∫ ln(4 sin²(τ/2)) e^{imτ} dτ = -2π/|m| (m ≠ 0), 0 for m = 0
  for (int m = 0; m < n; ++m) {
    Complex sum = 0.0;
    for (std::size_t k = 0; k < R.size(); ++k) sum += R[k] * std::polar(1.0, m * kPi * static_cast<double>(k) / n);
    const double expected = m == 0 ? 0.0 : -2.0 * kPi / m;
    EXPECT_NEAR(sum.real(), expected, 1e-13) << m;
    EXPECT_NEAR(sum.imag(), 0.0, 1e-13) << m;
  }
}

TEST(Assembly, CircleSingleLayerEigenvalues) {
  const DiscreteBoundary bd = discretize(kCircle, 32);
  const BoundaryOperators ops = assemble(bd, Wavenumber(1.0));
  for (int m = 0; m < 6; ++m) {
    const Eigen::VectorXcd e = fourier_mode(bd, m);
    EXPECT_LE(((ops.SH * e) - frozen::kCircleSH[m] * e).cwiseAbs().maxCoeff(), 1e-13) << m;
    EXPECT_LE(((ops.SM * e) - frozen::kCircleSM[m] * e).cwiseAbs().maxCoeff(), 1e-13) << m;
  }
}

TEST(Assembly, CircleDoubleLayerEigenvalues) {
  const double k = 1.4;
  const DiscreteBoundary bd = discretize(kCircle, 32);
  const BoundaryOperators ops = assemble(bd, Wavenumber(k));
  for (int m = 0; m < 6; ++m) {
    const Eigen::VectorXcd e = fourier_mode(bd, m);
    const Complex kh = 0.25 * kI * kPi * k *
                       (special::bessel_j(m, k) * special::hankel1_prime(m, k) +
                        special::bessel_j_prime(m, k) * special::hankel1(m, k));
    const double i_prime = 0.5 * (special::bessel_i(m - 1, k) + special::bessel_i(m + 1, k));
    const double km = 0.5 * k * (i_prime * special::bessel_k(m, k) + special::bessel_i(m, k) * special::bessel_k_prime(m, k));
    EXPECT_LE(((ops.KH * e) - kh * e).cwiseAbs().maxCoeff(), 1e-12) << m;
    EXPECT_LE(((ops.KM * e) - km * e).cwiseAbs().maxCoeff(), 1e-12) << m;
  }
}

TEST(Assembly, IndependentOfThreadCount) {
  const DiscreteBoundary bd = discretize(kKite, 24);
  BoundaryOperators one;
  BoundaryOperators many;
  {
    ScopedThreads t("1");
    one = assemble(bd, Wavenumber(1.0));
  }
  {
    ScopedThreads t("4");
    many = assemble(bd, Wavenumber(1.0));
  }
  EXPECT_TRUE(one.SH == many.SH);
  EXPECT_TRUE(one.KH == many.KH);
  EXPECT_TRUE(one.SM == many.SM);
  EXPECT_TRUE(one.KM == many.KM);
}

TEST(Solver, CircleFarFieldMatchesFrozenSeries) {
  const Scatterer sc(kCircle, Wavenumber(1.0), 64);
  const TraceSolution ts = sc.solve(PlaneWave{Direction(0.0)});
  const std::vector<Direction> dirs{Direction(0.0), Direction(kPi / 2), Direction(kPi), Direction(0.3)};
  const FarField ff = sc.farfield(ts, dirs);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    EXPECT_LE(std::abs(ff.values[i] - frozen::kCircleFarField[i]), 1e-12) << i;
  }
  EXPECT_GT(sc.solver().condition_estimate(), 1.0);
  EXPECT_LE(sc.solver().condition_estimate(), TraceSolver::kMaxCondition);
}

TEST(Solver, FarFieldRoutesAgree) {
  const Wavenumber k(2.0);
  const Scatterer sc(kKite, k, 64);
  const TraceSolution ts = sc.solve(PlaneWave{Direction(1.0)});
  const std::vector<Direction> dirs = uniform_directions(32);
  const FarField a = farfield_H(ts, sc.boundary(), k, dirs);
  const FarField b = farfield_biharmonic(ts, sc.boundary(), k, dirs);
  for (std::size_t i = 0; i < dirs.size(); ++i) EXPECT_LE(std::abs(a.values[i] - b.values[i]), 1e-12);
}

TEST(Solver, LinearInTheIncidentField) {
  const Wavenumber k(1.0);
  const Scatterer sc(kKite, k, 32);
  const Point2 z0{-4.0, 0.0};
  const Point2 z{0.0, 3.5};
  const TraceSolution both = sc.solve(SuperpositionBi{z0, z});
  const TraceSolution a = sc.solve(PointSourceBi{z0});
  const TraceSolution b = sc.solve(PointSourceBi{z});
  EXPECT_LE((both.a - a.a - b.a).cwiseAbs().maxCoeff(), 1e-10 * both.a.cwiseAbs().maxCoeff());
  EXPECT_LE((both.b - a.b - b.b).cwiseAbs().maxCoeff(), 1e-10 * both.b.cwiseAbs().maxCoeff());
}

TEST(Solver, ComponentsSolveTheirEquations) {
  const Wavenumber k(1.5);
  const Scatterer sc(kKite, k, 64);
  const TraceSolution ts = sc.solve(PlaneWave{Direction(0.2)});
  const Point2 x{2.5, 1.0};
  const double h = 1e-3;
  const std::vector<Point2> pts{x, x + Point2{h, 0}, x - Point2{h, 0}, x + Point2{0, h}, x - Point2{0, h}};
  const std::vector<FieldSample> f = sc.field(ts, pts);
  const Complex lapH = (f[1].uH + f[2].uH + f[3].uH + f[4].uH - 4.0 * f[0].uH) / (h * h);
  const Complex lapM = (f[1].uM + f[2].uM + f[3].uM + f[4].uM - 4.0 * f[0].uM) / (h * h);
  EXPECT_LE(std::abs(lapH + k.squared() * f[0].uH), 1e-5);
  EXPECT_LE(std::abs(lapM - k.squared() * f[0].uM), 1e-5);
  EXPECT_EQ(f[0].u, f[0].uH + f[0].uM);
  const Complex lapU = (f[1].u + f[2].u + f[3].u + f[4].u - 4.0 * f[0].u) / (h * h);
  EXPECT_LE(std::abs(lapU - f[0].lap_u), 1e-5);
}

TEST(Solver, ClampedConditionsHoldNearTheBoundary) {
  // The scattered field cancels the incident field as the boundary is approached.
  const Wavenumber k(1.0);
  const Scatterer sc(kCircle, k, 64);
  const TraceSolution ts = sc.solve(PlaneWave{Direction(0.0)});
  for (double theta : {0.0, 1.0, 2.5}) {
    const Point2 x = 1.06 * Point2{std::cos(theta), std::sin(theta)};
    const std::vector<Point2> pts{x};
    const Complex total = sc.field(ts, pts).front().u + std::polar(1.0, x.x1);
    // u and ∂_r u vanish at r = 1, so u = O(0.06²).
    EXPECT_LT(std::abs(total), 0.01);
  }
}

TEST(Solver, EvaluationTargetsAreChecked) {
  const Scatterer sc(kCircle, Wavenumber(1.0), 32);
  const TraceSolution ts = sc.solve(PlaneWave{Direction(0.0)});
  const std::vector<Point2> inside{{0.1, 0.2}};
  const std::vector<Point2> close{{1.01, 0.0}};
  EXPECT_THROW(sc.field(ts, inside), DomainError);
  EXPECT_THROW(sc.field(ts, close), EvaluationDistanceError);
}

TEST(Solver, RejectsMismatchedDataAndSingularSystems) {
  const Scatterer sc(kCircle, Wavenumber(1.0), 16);
  EXPECT_THROW(sc.solve(BoundaryData{NodeVector::Zero(10), NodeVector::Zero(10)}), ValidationError);
  BoundaryOperators ops;
  ops.SH = ops.SM = Eigen::MatrixXcd::Zero(16, 16);
  ops.KH = ops.KM = 0.5 * Eigen::MatrixXcd::Identity(16, 16);
  EXPECT_THROW(TraceSolver{ops}, ResonanceError);
}

TEST(Solver, UniformDirections) {
  const std::vector<Direction> d = uniform_directions(4);
  ASSERT_EQ(d.size(), 4u);
  EXPECT_DOUBLE_EQ(d[1].theta(), kPi / 2);
  EXPECT_DOUBLE_EQ(d[3].theta(), 3 * kPi / 2);
}
