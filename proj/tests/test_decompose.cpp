#include <gtest/gtest.h>

#include <cstdlib>

#include "flatstrata/decompose.hpp"
#include "flatstrata/error.hpp"
#include "flatstrata/homology.hpp"
#include "flatstrata/verify.hpp"
#include "oracles.hpp"

using namespace flatstrata;

namespace {

CylinderDiagram o1() { return CylinderDiagram({{{1}, {4}}, {{4, 2, 3}, {1, 2, 5}}, {{5}, {3}}}); }
FlatSurface unit_o1() { return build(o1(), default_metrics(o1())); }

FlatSurface torus() {
  CylinderDiagram t({{{1}, {1}}});
  return build(t, default_metrics(t));
}

}  // namespace

TEST(Trace, TorusDiagonal) {
  auto sc = trace_separatrix(torus(), Direction(1, 1), 1);
  EXPECT_EQ(sc.holonomy, (Vec2{1, 1}));
  EXPECT_EQ(sc.segments.size(), 1u);
}

TEST(Trace, O1VerticalHolonomiesIntegral) {
  auto m = unit_o1();
  for (Label l : m.diagram().labels()) {
    auto sc = trace_separatrix(m, Direction::vertical(), l);
    EXPECT_TRUE(sc.holonomy.x.is_zero());
    EXPECT_TRUE(sc.holonomy.y.is_integer());
    EXPECT_GT(sc.holonomy.y, Rational(0));
  }
}

TEST(Trace, BudgetFromEnvironment) {
  auto m = build(o1(), random_metrics(o1(), 2));
  setenv("FLATSTRATA_BUDGET", "1", 1);
  EXPECT_EQ(tracing_budget(m, Direction(3, 2)), 1u);
  EXPECT_THROW(decompose(m, Direction(3, 2)), Error);
  unsetenv("FLATSTRATA_BUDGET");
  EXPECT_GT(tracing_budget(m, Direction(3, 2)), 1u);
  EXPECT_NO_THROW(decompose(m, Direction(3, 2)));
}

TEST(Decompose, HorizontalRoundTrip) {
  for (const auto& d : eight_diagrams())
    for (int s = 0; s < 5; ++s) {
      auto m = build(d, random_metrics(d, 100 + s));
      auto r = oracle::reconstruct_horizontal(decompose(m, Direction::horizontal()));
      EXPECT_EQ(r.words, d.cylinders());
      EXPECT_EQ(r.widths, m.metrics().widths);
      EXPECT_EQ(r.heights, m.metrics().heights);
      EXPECT_EQ(r.twists, m.metrics().twists);
    }
}

TEST(Decompose, AreaConservedAndCylinderBound) {
  std::mt19937_64 rng(1);
  for (const auto& d : enumerate(SingularityProfile::from_orders({4}))) {
    auto m = build(d, random_metrics(d, rng()));
    for (int i = 0; i < 4; ++i) {
      auto dec = decompose(m, oracle::random_direction(rng));
      EXPECT_EQ(dec.area(), m.area());
      EXPECT_LE(dec.cylinders.size(), 3u);
      for (const auto& c : dec.cylinders) {
        Rational strips = 0;
        for (const auto& s : c.strips) strips += s.area();
        EXPECT_EQ(strips, c.area);
        EXPECT_TRUE(dec.direction.parallel(c.core));
      }
      EXPECT_EQ(dec.saddle_connections.size(), 5u);
    }
  }
}

TEST(Decompose, TwoCylinderFixtures) {
  // vertical cylinders through the shaded labels leave part of the surface
  for (auto [id, a, b] : {std::tuple{"D1", 1, 2}, {"D2", 1, 2}, {"D3", 3, 4}, {"D4", 1, 2}}) {
    auto m = build_scenario(id);
    auto v1 = vertical_cylinder_through(m, a), v2 = vertical_cylinder_through(m, b);
    ASSERT_TRUE(v1 && v2) << id;
    EXPECT_NE(v1->strips.front().start, v2->strips.front().start);
    EXPECT_LT(v1->area + v2->area, m.area()) << id;
  }
}

TEST(Decompose, VerticalCylinderThroughTorus) {
  auto v = vertical_cylinder_through(torus(), 1);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->area, Rational(1));
}

TEST(Decompose, O4BVerticalCylinderThroughTwo) {
  auto m = build_scenario("FO4B");
  EXPECT_TRUE(vertical_cylinder_through(m, 2).has_value());
}

TEST(ApplyMatrix, IdentityIsBitExact) {
  for (const auto& d : eight_diagrams()) {
    auto m = build(d, random_metrics(d, 8));
    EXPECT_EQ(apply_matrix(m, Matrix2::identity()), m);
  }
}

TEST(ApplyMatrix, Equivariance) {
  std::mt19937_64 rng(17);
  auto ds = eight_diagrams();
  for (int i = 0; i < 40; ++i) {
    const auto& d = ds[i % ds.size()];
    auto m = build(d, random_metrics(d, rng(), 2));
    Matrix2 a = oracle::random_matrix(rng);
    Direction dir = oracle::random_direction(rng);
    auto ma = apply_matrix(m, a);
    EXPECT_EQ(ma.area(), m.area() * a.det().abs());
    auto lhs = oracle::cylinder_signature(decompose(ma, Direction::of(a * dir.vector())));
    auto rhs = oracle::cylinder_signature(decompose(m, dir), a);
    EXPECT_EQ(lhs, rhs);
    // and back again
    EXPECT_TRUE(translation_equivalent(apply_matrix(ma, a.inverse()), m));
  }
}

TEST(ApplyMatrix, PeriodsTransformLinearly) {
  auto m = build(o1(), random_metrics(o1(), 3));
  for (Matrix2 a : {Matrix2::shear(Rational(1, 2)), Matrix2::diag(2, Rational(1, 3)), Matrix2{2, 1, 0, 1}}) {
    auto ma = apply_matrix(m, a);
    ASSERT_EQ(ma.diagram(), m.diagram());
    PeriodBasis b(m.diagram());
    auto before = period_vector(m, b), after = period_vector(ma, b);
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_EQ(after[i], a * before[i]);
  }
}

TEST(ApplyMatrix, Singular) { EXPECT_THROW(apply_matrix(unit_o1(), Matrix2{1, 1, 1, 1}), Error); }

TEST(DeformClass, RequiresFixedDirection) {
  auto m = unit_o1();
  EXPECT_THROW(deform_class(m, Direction::vertical(), {0}, Matrix2::shear(1)), Error);
  auto same = deform_class(m, Direction::horizontal(), {1}, Matrix2::shear(Rational(1, 2)));
  EXPECT_EQ(same.area(), m.area());
}

TEST(AlignTwists, EmptyDemandsKeepMetrics) {
  auto m = build(o1(), random_metrics(o1(), 6));
  EXPECT_EQ(align_twists(m, {0, 1, 2}, {}), m.metrics());
}

TEST(AlignTwists, O1LabelOneAboveItself) {
  auto m = unit_o1();
  // (1) on the bottom of B under (4) on its top closes up through A
  std::size_t b = m.diagram().cyl_bottom(1);
  Metrics mt = align_twists(m, {0, 1}, {{b, {1, 0}, {4, 0}}});
  auto s = build(m.diagram(), mt);
  EXPECT_TRUE(vertical_cylinder_through(s, 1).has_value());
}

TEST(AlignTwists, Infeasible) {
  auto m = unit_o1();
  std::size_t b = m.diagram().cyl_bottom(1);
  try {
    align_twists(m, {b}, {{b, {1, 0}, {4, 0}}, {b, {1, 0}, {2, 0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Infeasible);
  }
}
