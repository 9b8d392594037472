#include <gtest/gtest.h>

#include "flatstrata/error.hpp"
#include "flatstrata/homology.hpp"
#include "flatstrata/surface.hpp"
#include "flatstrata/verify.hpp"

using namespace flatstrata;

namespace {

CylinderDiagram o1() { return CylinderDiagram({{{1}, {4}}, {{4, 2, 3}, {1, 2, 5}}, {{5}, {3}}}); }

FlatSurface unit_o1() { return build(o1(), default_metrics(o1())); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::BadInput;
}

}  // namespace

TEST(Surface, UnitO1) {
  auto m = unit_o1();
  EXPECT_EQ(m.area(), Rational(5));
  EXPECT_EQ(m.circumference(0), Rational(1));
  EXPECT_EQ(m.circumference(1), Rational(3));
  EXPECT_EQ(m.circumference(2), Rational(1));
}

TEST(Surface, SolvesMissingWidths) {
  Metrics mt;
  mt.widths = {{1, 1}, {2, 1}, {3, 1}};
  mt.heights = {1, 1, 1};
  mt.twists = {0, 0, 0};
  auto m = build(o1(), mt);
  EXPECT_EQ(m.width(4), Rational(1));
  EXPECT_EQ(m.width(5), Rational(1));
}

TEST(Surface, InconsistentWidths) {
  Metrics mt = default_metrics(o1());
  mt.widths[4] = 2;
  EXPECT_EQ(code_of([&] { build(o1(), mt); }), ErrorCode::InconsistentWidths);
  Metrics partial;
  partial.widths = {{2, 1}};
  partial.heights = {1, 1, 1};
  EXPECT_EQ(code_of([&] { build(o1(), partial); }), ErrorCode::InconsistentWidths);
}

TEST(Surface, NonPositive) {
  Metrics mt = default_metrics(o1());
  mt.heights[1] = 0;
  EXPECT_EQ(code_of([&] { build(o1(), mt); }), ErrorCode::NonPositive);
  mt = default_metrics(o1());
  mt.widths[2] = -1;
  EXPECT_EQ(code_of([&] { build(o1(), mt); }), ErrorCode::NonPositive);
}

TEST(Surface, TorusDehnTwist) {
  CylinderDiagram t({{{1}, {1}}});
  auto m = build(t, default_metrics(t));
  EXPECT_EQ(m.area(), Rational(1));
  auto s = shear_class(m, {0}, 1);
  EXPECT_TRUE(translation_equivalent(s, m));
  EXPECT_EQ(s.twist(0).mod(s.circumference(0)), Rational(0));
}

TEST(Surface, ShearAndStretchIdentities) {
  auto m = build(o1(), random_metrics(o1(), 4));
  EXPECT_EQ(shear_class(m, {0, 1, 2}, 0), m);
  EXPECT_EQ(stretch_class(m, {1}, 1), m);
  auto s = stretch_class(stretch_class(m, {1}, Rational(3, 2)), {1}, Rational(2, 3));
  EXPECT_EQ(s, m);
  auto t = shear_class(m, {1}, Rational(1, 3));
  EXPECT_EQ(t.twist(1).mod(t.circumference(1)),
            (m.twist(1) + Rational(1, 3) * m.height(1)).mod(m.circumference(1)));
  EXPECT_EQ(t.twist(0), m.twist(0));
  EXPECT_EQ(code_of([&] { stretch_class(m, {1}, 0); }), ErrorCode::NonPositive);
}

TEST(Surface, RandomMetricsAreDeterministicAndValid) {
  for (const auto& d : eight_diagrams()) {
    auto a = random_metrics(d, 11), b = random_metrics(d, 11);
    EXPECT_EQ(a, b);
    auto m = build(d, a);
    for (std::size_t j = 0; j < m.cylinder_count(); ++j) {
      EXPECT_GE(m.twist(j), Rational(0));
      EXPECT_LT(m.twist(j), m.circumference(j));
    }
  }
}

TEST(Surface, RotatePiIsInvolution) {
  for (const auto& d : eight_diagrams()) {
    auto m = build(d, random_metrics(d, 5));
    auto r = rotate_pi(m);
    EXPECT_EQ(r.area(), m.area());
    EXPECT_TRUE(translation_equivalent(rotate_pi(r), m));
    EXPECT_TRUE(translation_equivalent(reflect_x(reflect_x(m)), m));
    EXPECT_TRUE(translation_equivalent(reflect_y(reflect_y(m)), m));
  }
}

TEST(Surface, TranslationMapsPreserveWidths) {
  auto m = unit_o1();
  auto maps = translation_label_maps(m, m);
  ASSERT_FALSE(maps.empty());
  for (const auto& phi : maps)
    for (auto& [a, b] : phi) EXPECT_EQ(m.width(a), m.width(b));
  auto other = build(o1(), random_metrics(o1(), 1));
  EXPECT_FALSE(translation_equivalent(m, other));
}

TEST(Homology, BasisSizeAndTorus) {
  PeriodBasis b(o1());
  EXPECT_EQ(b.size(), 6u);
  CylinderDiagram t({{{1}, {1}}});
  auto torus = build(t, default_metrics(t));
  PeriodBasis tb(t);
  auto pv = period_vector(torus, tb);
  ASSERT_EQ(pv.size(), 2u);
  EXPECT_EQ(pv[0], (Vec2{1, 0}));
  EXPECT_EQ(pv[1], (Vec2{0, 1}));
}

TEST(Homology, ShearMovesCrossingPeriods) {
  auto m = unit_o1();
  PeriodBasis b(o1());
  auto before = period_vector(m, b);
  auto after = period_vector(shear_class(m, {1}, Rational(1, 2)), b);
  ASSERT_EQ(before.size(), after.size());
  int changed = 0;
  for (std::size_t i = 0; i < before.size(); ++i) {
    Vec2 diff = after[i] - before[i];
    EXPECT_TRUE(diff.y.is_zero());
    // each crossing of B moves the period by t * height(B)
    EXPECT_TRUE((diff.x / Rational(1, 2)).is_integer());
    changed += !diff.x.is_zero();
  }
  EXPECT_GT(changed, 0);
  EXPECT_EQ(code_of([&] { b.check(enumerate(SingularityProfile::from_orders({4})).front()); }),
            ErrorCode::BasisMismatch);
}
