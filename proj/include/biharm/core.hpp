#pragma once

// Shared value types and error classes for the biharmonic scattering library.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace biharm {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEulerGamma = std::numbers::egamma;

// Argument outside the domain of a kernel (coincident points, point on the boundary, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid user-supplied parameter or geometric configuration.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The discrete boundary-integral system is numerically singular.
class ResonanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Field requested too close to the boundary for plain quadrature.
class EvaluationDistanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr Point2 operator+(Point2 o) const { return {x1 + o.x1, x2 + o.x2}; }
  constexpr Point2 operator-(Point2 o) const { return {x1 - o.x1, x2 - o.x2}; }
  constexpr Point2 operator*(double s) const { return {x1 * s, x2 * s}; }
  constexpr bool operator==(const Point2&) const = default;
};

constexpr Point2 operator*(double s, Point2 p) { return p * s; }
constexpr double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(Point2 a) { return std::hypot(a.x1, a.x2); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

class Wavenumber {
 public:
  explicit Wavenumber(double kappa) : kappa_(kappa) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
      throw ValidationError("wavenumber must be a positive finite number, got " +
                            std::to_string(kappa));
    }
  }
  double value() const { return kappa_; }
  double squared() const { return kappa_ * kappa_; }

 private:
  double kappa_;
};

// Angle on the unit circle; houses incident directions d and observation directions x̂.
class Direction {
 public:
  constexpr Direction() = default;
  explicit Direction(double theta) : theta_(wrap(theta)) {}

  double theta() const { return theta_; }
  Point2 unit() const { return {std::cos(theta_), std::sin(theta_)}; }
  Direction opposite() const { return Direction(theta_ + kPi); }

 private:
  static double wrap(double t) {
    double w = std::fmod(t, 2.0 * kPi);
    if (w < 0.0) w += 2.0 * kPi;
    return w;
  }
  double theta_ = 0.0;
};

}  // namespace biharm
