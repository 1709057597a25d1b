#include <gtest/gtest.h>

#include <cmath>

#include "biharm/verify.hpp"

using namespace biharm;

namespace {
const Curve kCircle({ShapeKind::Circle, {0.0, 0.0}, 1.0, 1.0});
const Curve kKite({ShapeKind::Kite, {0.0, 0.0}, 1.0, 1.0});
const Wavenumber k1(1.0);

void expect_pass(const CheckReport& r) {
  EXPECT_TRUE(r.pass) << r.name << " residual " << r.residual << " tolerance " << r.tolerance << " " << r.note;
  EXPECT_GE(r.residual, 0.0);
  EXPECT_GE(r.wall_time_s, 0.0);
  EXPECT_FALSE(r.scene.empty());
}

PhaselessConfig phaseless_config() {
  PhaselessConfig cfg;
  cfg.z0 = {-5.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    const double t = -0.6 + 0.3 * i;
    cfg.receivers.push_back(4.0 * Point2{std::cos(t), std::sin(t)});
    cfg.sources.push_back(5.0 * Point2{std::cos(t + 1.8), std::sin(t + 1.8)});
  }
  return cfg;
}
}  // namespace

TEST(Verify, ReportCarriesNameToleranceAndVerdict) {
  const CheckReport r = check_interior_representation(kCircle, k1, 32, EntirePlane{Direction(0.0)}, 1e-3);
  EXPECT_EQ(r.name, "interior_representation");
  EXPECT_EQ(r.tolerance, 1e-3);
  EXPECT_EQ(r.pass, r.residual <= r.tolerance);
  EXPECT_NE(r.scene.find("circle"), std::string::npos);
}

TEST(Verify, DefaultTolerances) {
  EXPECT_EQ(default_tolerance("farfield_equivalence"), 1e-12);
  EXPECT_EQ(default_tolerance("mixed_reciprocity"), 1e-6);
  EXPECT_THROW(default_tolerance("no_such_check"), ValidationError);
}

TEST(Verify, UnderResolvedInteriorRepresentationFails) {
  const CheckReport r = check_interior_representation(kCircle, k1, 8, EntirePlane{Direction(0.4)});
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.residual, 1e-10);
}

TEST(Verify, RepresentationChecks) {
  expect_pass(check_interior_representation(kKite, k1, 64, EntireModified{Direction(0.4)}));
  expect_pass(check_exterior_representation(kKite, Wavenumber(2.0), 64));
  expect_pass(check_exterior_null_field(kKite, Wavenumber(2.0), 64));
}

TEST(Verify, ManufacturedSolution) {
  const CheckReport r = check_manufactured_solution(kKite, Wavenumber(2.0), 64);
  expect_pass(r);
  EXPECT_LT(r.metrics.at("helmholtz_trace_error"), 1e-6);
  EXPECT_GT(r.metrics.at("condition_estimate"), 1.0);
}

TEST(Verify, CircleOracle) {
  expect_pass(check_circle_oracle_farfield(1.0, k1, 0.0, 48, 40, 90));
  expect_pass(check_circle_oracle_field(1.0, Wavenumber(2.0), 0.5, 48, 40));
}

TEST(Verify, FarFieldEquivalenceForPointSources) {
  expect_pass(check_farfield_equivalence(Scene{kKite.spec(), 1.0, 48, PointSourceH{{0.0, 3.0}}}));
  expect_pass(check_farfield_equivalence(Scene{kKite.spec(), 1.0, 48, SuperpositionBi{{3.0, 0.0}, {0.0, 3.0}}}));
}

TEST(Verify, MixedReciprocity) {
  const CheckReport r = check_mixed_reciprocity(kKite, k1, 64, {2.0, 2.0}, uniform_directions(4));
  expect_pass(r);
  EXPECT_LT(r.metrics.at("relative_residual_helmholtz"), 1e-6);
  EXPECT_THROW(check_mixed_reciprocity(kKite, k1, 64, {0.0, 0.0}, uniform_directions(4)), ValidationError);
  EXPECT_THROW(check_mixed_reciprocity(kKite, k1, 64, {2.0, 2.0}, {}), ValidationError);
}

TEST(Verify, SymmetryOfEachComponent) {
  const Point2 x{2.5, 0.0};
  const Point2 z{0.0, 3.0};
  for (SymmetryComponent c : {SymmetryComponent::Helmholtz, SymmetryComponent::Modified, SymmetryComponent::Biharmonic}) {
    const CheckReport r = check_symmetry(kKite, k1, 64, x, z, c);
    expect_pass(r);
    EXPECT_GT(r.metrics.at("magnitude"), 1e-4) << to_string(c);
  }
  EXPECT_THROW(check_symmetry(kKite, k1, 64, x, x, SymmetryComponent::Helmholtz), ValidationError);
}

// Cross components are not symmetric one by one; they swap with a sign:
// (scattered M-part for source G_H at z)(x) = -(scattered H-part for source G_M at x)(z).
TEST(Verify, CrossComponentsSwapWithSign) {
  const Scatterer sc(kKite, k1, 64);
  const Point2 x{2.5, 0.0};
  const Point2 z{0.0, 3.0};
  const std::vector<Point2> at_x{x};
  const std::vector<Point2> at_z{z};
  const FieldSample h_src = sc.field(sc.solve(PointSourceH{z}), at_x).front();
  const FieldSample m_src = sc.field(sc.solve(PointSourceM{x}), at_z).front();
  EXPECT_LE(std::abs(h_src.uM + m_src.uH), 1e-12);
  const FieldSample h_swapped = sc.field(sc.solve(PointSourceH{x}), at_z).front();
  EXPECT_GT(std::abs(h_src.uM - h_swapped.uM), 1e-4);
}

TEST(Verify, TranslationInvariance) {
  const CheckReport r = check_translation_invariance(kKite, k1, 48, {0.7, -0.3}, 0.0);
  expect_pass(r);
  EXPECT_LE(r.metrics.at("phaseless_residual"), r.residual + 1e-15);
  EXPECT_EQ(check_translation_invariance(kKite, k1, 32, {0.0, 0.0}, 0.0).residual, 0.0);
}

TEST(Verify, DecayAndAsymptotics) {
  const Scene scene{kCircle.spec(), 1.0, 48, PlaneWave{Direction(0.0)}};
  expect_pass(check_M_decay(scene, Direction(0.3), {3.0, 4.0, 5.0}));
  const CheckReport a = check_asymptotic_expansion(scene, Direction(0.3), 50.0);
  expect_pass(a);
  EXPECT_GE(a.metrics.at("ratio"), 1.6);
  EXPECT_LE(a.metrics.at("ratio"), 2.4);
  EXPECT_THROW(check_M_decay(scene, Direction(0.3), {2.0, 4.0}), ValidationError);
  EXPECT_THROW(check_M_decay(scene, Direction(0.3), {5.0, 4.0}), ValidationError);
  EXPECT_THROW(check_asymptotic_expansion(scene, Direction(0.3), 10.0), ValidationError);
}

TEST(Verify, LargerWavenumberDecaysFaster) {
  auto uM_at = [](double kappa, double r) {
    const Scatterer sc(kCircle, Wavenumber(kappa), 48);
    const TraceSolution ts = sc.solve(PlaneWave{Direction(0.0)});
    const std::vector<Point2> pts{r * Direction(0.3).unit()};
    return std::abs(sc.field(ts, pts).front().uM);
  };
  for (double r : {3.0, 4.0}) EXPECT_LT(uM_at(2.0, r), uM_at(1.0, r));
}

TEST(Verify, SelfConvergence) {
  const CheckReport r = check_self_convergence(kKite, k1, 24, 0.0);
  expect_pass(r);
  EXPECT_GT(r.metrics.at("difference_n_2n"), r.metrics.at("difference_2n_4n"));
}

TEST(Verify, PhaselessDiscrepancy) {
  const PhaselessConfig cfg = phaseless_config();
  const Curve circle2({ShapeKind::Circle, {-0.2, 0.0}, std::sqrt(1.5), std::sqrt(1.5)});
  EXPECT_EQ(phaseless_discrepancy(kKite, kKite, k1, 32, cfg).residual, 0.0);
  const CheckReport r = check_phaseless_distinguishability(kKite, circle2, k1, 48, cfg);
  expect_pass(r);
  EXPECT_GE(r.metrics.at("distinct_cavity_discrepancy"), 1e3 * r.metrics.at("identical_cavity_discrepancy"));
}

TEST(Verify, PhaselessConfigurationValidated) {
  PhaselessConfig cfg = phaseless_config();
  cfg.sources.push_back(cfg.receivers.front());
  EXPECT_THROW(phaseless_discrepancy(kKite, kKite, k1, 32, cfg), ValidationError);
  cfg = phaseless_config();
  cfg.z0 = {0.0, 0.0};
  try {
    phaseless_discrepancy(kKite, kKite, k1, 32, cfg);
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("z0"), std::string::npos);
  }
  cfg = phaseless_config();
  cfg.receivers.clear();
  EXPECT_THROW(phaseless_discrepancy(kKite, kKite, k1, 32, cfg), ValidationError);
}

TEST(Verify, ProbePointsAreWhereTheyShouldBe) {
  const DiscreteBoundary bd = discretize(kKite, 64);
  for (const Point2& p : interior_probe_points(bd, 10)) {
    EXPECT_TRUE(is_inside(bd, p));
    EXPECT_GE(min_distance_to_nodes(bd, p), 0.25 * bd.scale - 1e-12);
  }
  for (const Point2& p : exterior_probe_points(kKite, 10)) EXPECT_TRUE(is_exterior(bd, p, 0.5));
}
