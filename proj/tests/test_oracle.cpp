#include <gtest/gtest.h>

#include <cmath>

#include "biharm/oracle.hpp"
#include "frozen_values.hpp"

using namespace biharm;

TEST(Oracle, FarFieldMatchesFrozenSeries) {
  const MieSolution sol = mie_solve(1.0, Wavenumber(1.0), 0.0, 40);
  const std::vector<Direction> dirs{Direction(0.0), Direction(kPi / 2), Direction(kPi), Direction(0.3)};
  const FarField ff = mie_farfield(sol, dirs);
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    EXPECT_LE(std::abs(ff.values[i] - frozen::kCircleFarField[i]), 1e-13) << i;
  }
  EXPECT_LT(sol.max_residual, 1e-14);
}

TEST(Oracle, ClampedConditionsOnTheCircle) {
  const double R = 1.3;
  const Wavenumber k(2.0);
  const double theta_d = 0.7;
  const MieSolution sol = mie_solve(R, k, theta_d, 50);
  const Point2 d = Direction(theta_d).unit();
  const double h = 1e-6;
  for (double t : {0.0, 1.1, 3.0, 4.4}) {
    const Point2 e{std::cos(t), std::sin(t)};
    const std::vector<Point2> pts{R * e, (R + h) * e, (R + 2 * h) * e};
    const std::vector<MieFieldSample> f = mie_field(sol, pts);
    auto total = [&](std::size_t i) { return f[i].u + std::polar(1.0, k.value() * dot(d, pts[i])); };
    EXPECT_LE(std::abs(total(0)), 1e-13);
    const Complex dr = (-3.0 * total(0) + 4.0 * total(1) - total(2)) / (2 * h);
    EXPECT_LE(std::abs(dr), 1e-7);
  }
}

TEST(Oracle, FarFieldIsLimitOfField) {
  const Wavenumber k(1.0);
  const MieSolution sol = mie_solve(1.0, k, 0.0, 40);
  const Direction xhat(0.8);
  const std::vector<Direction> dirs{xhat};
  const Complex uinf = mie_farfield(sol, dirs).values.front();
  double previous = 1e300;
  for (double r : {50.0, 200.0, 800.0}) {
    const std::vector<Point2> pts{r * xhat.unit()};
    const Complex scaled = std::sqrt(r) * std::polar(1.0, -r) * mie_field(sol, pts).front().u;
    const double err = std::abs(scaled - uinf);
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 2e-3);
}

TEST(Oracle, SymmetricAboutIncidentDirection) {
  const MieSolution sol = mie_solve(1.0, Wavenumber(1.5), 0.0, 40);
  const std::vector<Direction> dirs{Direction(0.9), Direction(-0.9)};
  const FarField ff = mie_farfield(sol, dirs);
  EXPECT_LE(std::abs(ff.values[0] - ff.values[1]), 1e-14);
}

TEST(Oracle, RotatingTheIncidentDirectionRotatesThePattern) {
  const Wavenumber k(1.0);
  const MieSolution a = mie_solve(1.0, k, 0.0, 40);
  const MieSolution b = mie_solve(1.0, k, 1.2, 40);
  const std::vector<Direction> da{Direction(0.5)};
  const std::vector<Direction> db{Direction(1.7)};
  EXPECT_LE(std::abs(mie_farfield(a, da).values[0] - mie_farfield(b, db).values[0]), 1e-13);
}

TEST(Oracle, ValidatesInputs) {
  EXPECT_THROW(mie_solve(1.0, Wavenumber(1.0), 0.0, 10), ValidationError);
  EXPECT_THROW(mie_solve(-1.0, Wavenumber(1.0), 0.0, 40), ValidationError);
  const MieSolution sol = mie_solve(1.0, Wavenumber(1.0), 0.0, 30);
  const std::vector<Point2> inside{{0.2, 0.1}};
  EXPECT_THROW(mie_field(sol, inside), DomainError);
}

TEST(Oracle, IntegerPowersOfI) {
  EXPECT_EQ(i_pow(0), Complex(1, 0));
  EXPECT_EQ(i_pow(5), Complex(0, 1));
  EXPECT_EQ(i_pow(-1), Complex(0, -1));
  EXPECT_EQ(i_pow(-6), Complex(-1, 0));
}
