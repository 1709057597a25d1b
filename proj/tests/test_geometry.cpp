#include <gtest/gtest.h>

#include <cmath>

#include "biharm/geometry.hpp"

using namespace biharm;

namespace {
const ShapeSpec kCircle{ShapeKind::Circle, {0.0, 0.0}, 1.0, 1.0};
const ShapeSpec kKite{ShapeKind::Kite, {0.0, 0.0}, 1.0, 1.0};
const ShapeSpec kEllipse{ShapeKind::Ellipse, {0.5, -0.5}, 2.0, 0.5};
const ShapeSpec kPeanut{ShapeKind::Peanut, {0.0, 0.0}, 1.0, 1.0};
}  // namespace

TEST(Geometry, CirclePerimeterAndArea) {
  const DiscreteBoundary bd = discretize(Curve(kCircle), 32);
  EXPECT_EQ(bd.size(), 64u);
  EXPECT_NEAR(perimeter(bd), 2 * kPi, 1e-13);
  EXPECT_NEAR(signed_area(bd), kPi, 1e-13);
  EXPECT_NEAR(bd.weight(), kPi / 32, 0.0);
}

TEST(Geometry, KiteAreaIsThreeHalvesPi) {
  const DiscreteBoundary bd = discretize(Curve(kKite), 64);
  EXPECT_NEAR(signed_area(bd), 1.5 * kPi, 1e-12);
}

TEST(Geometry, EllipseAreaAndCentroid) {
  const DiscreteBoundary bd = discretize(Curve(kEllipse), 64);
  EXPECT_NEAR(signed_area(bd), kPi * 2.0 * 0.5, 1e-12);
  const Point2 c = centroid(bd);
  EXPECT_NEAR(c.x1, 0.5, 1e-12);
  EXPECT_NEAR(c.x2, -0.5, 1e-12);
}

TEST(Geometry, AllShapesCounterclockwiseWithOutwardNormals) {
  for (const ShapeSpec& s : {kCircle, kKite, kEllipse, kPeanut}) {
    SCOPED_TRACE(to_string(s.kind));
    const DiscreteBoundary bd = discretize(Curve(s), 48);
    EXPECT_GT(signed_area(bd), 0.0);
    for (std::size_t j = 0; j < bd.size(); ++j) {
      EXPECT_NEAR(norm(bd.normals[j]), 1.0, 1e-14);
      EXPECT_NEAR(dot(bd.normals[j], bd.tangents[j]), 0.0, 1e-13);
      const Point2 out = bd.points[j] + 1e-3 * bd.normals[j];
      const Point2 in = bd.points[j] - 1e-3 * bd.normals[j];
      EXPECT_FALSE(is_inside(bd, out));
      EXPECT_TRUE(is_inside(bd, in));
    }
  }
}

TEST(Geometry, DerivativesMatchFiniteDifferences) {
  const double h = 1e-6;
  for (const ShapeSpec& s : {kKite, kEllipse, kPeanut}) {
    const Curve c(s);
    for (double t : {0.1, 1.3, 2.9, 5.0}) {
      const CurveSample a = c.sample(t);
      const CurveSample p = c.sample(t + h);
      const CurveSample m = c.sample(t - h);
      EXPECT_NEAR(a.dx.x1, (p.x.x1 - m.x.x1) / (2 * h), 1e-8);
      EXPECT_NEAR(a.dx.x2, (p.x.x2 - m.x.x2) / (2 * h), 1e-8);
      EXPECT_NEAR(a.ddx.x1, (p.dx.x1 - m.dx.x1) / (2 * h), 1e-8);
      EXPECT_NEAR(a.ddx.x2, (p.dx.x2 - m.dx.x2) / (2 * h), 1e-8);
    }
  }
}

TEST(Geometry, CircleCurvatureIsInverseRadius) {
  const DiscreteBoundary bd = discretize(Curve({ShapeKind::Circle, {1, 2}, 2.5, 2.5}), 16);
  for (double kappa : bd.curvature) EXPECT_NEAR(kappa, 0.4, 1e-14);
}

TEST(Geometry, TranslationMovesEveryNode) {
  const Point2 h{0.7, -0.3};
  const DiscreteBoundary a = discretize(Curve(kKite), 32);
  const DiscreteBoundary b = discretize(translate(Curve(kKite), h), 32);
  for (std::size_t j = 0; j < a.size(); ++j) {
    EXPECT_NEAR(b.points[j].x1, a.points[j].x1 + h.x1, 1e-15);
    EXPECT_NEAR(b.points[j].x2, a.points[j].x2 + h.x2, 1e-15);
    EXPECT_EQ(a.normals[j], b.normals[j]);
  }
  EXPECT_DOUBLE_EQ(a.scale, b.scale);
}

TEST(Geometry, ExteriorWithClearance) {
  const DiscreteBoundary bd = discretize(Curve(kCircle), 32);
  EXPECT_TRUE(is_exterior(bd, {2.0, 0.0}));
  EXPECT_FALSE(is_exterior(bd, {0.5, 0.0}));
  EXPECT_FALSE(is_exterior(bd, {1.0 + 1e-9, 0.0}));
  EXPECT_FALSE(is_exterior(bd, {1.01, 0.0}, 0.05));
  EXPECT_TRUE(is_exterior(bd, {1.1, 0.0}, 0.05));
}

TEST(Geometry, ScaleIsBoundingRadius) {
  EXPECT_NEAR(Curve(kCircle).scale(), 1.0, 1e-12);
  EXPECT_NEAR(Curve(kEllipse).scale(), 2.0, 1e-12);
  EXPECT_GT(Curve(kKite).scale(), 1.5);
}

TEST(Geometry, InvalidParametersRejected) {
  EXPECT_THROW(Curve({ShapeKind::Circle, {0, 0}, -1.0, 1.0}), ValidationError);
  EXPECT_THROW(Curve({ShapeKind::Ellipse, {0, 0}, 1.0, 0.0}), ValidationError);
  EXPECT_THROW(Curve({ShapeKind::Kite, {std::nan(""), 0}, 1.0, 1.0}), ValidationError);
  EXPECT_THROW(discretize(Curve(kCircle), 4), ValidationError);
  EXPECT_THROW(shape_kind_from_string("square"), ValidationError);
  EXPECT_EQ(shape_kind_from_string("peanut"), ShapeKind::Peanut);
}
