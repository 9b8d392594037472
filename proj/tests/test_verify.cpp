#include <gtest/gtest.h>

#include <algorithm>

#include "flatstrata/error.hpp"
#include "flatstrata/verify.hpp"

using namespace flatstrata;

namespace {

std::vector<std::array<Rational, 3>> small_grid() {
  std::vector<std::array<Rational, 3>> g;
  for (int x = 1; x <= 3; ++x)
    for (int y = 1; y <= 3; ++y)
      for (int z = 1; z <= 3; ++z) g.push_back({Rational(x), Rational(y), Rational(z)});
  return g;
}

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

TEST(Fixtures, IdsSortedAndLoadable) {
  auto ids = fixture_ids();
  ASSERT_FALSE(ids.empty());
  EXPECT_TRUE(std::is_sorted(ids.begin(), ids.end()));
  for (const auto& id : ids) EXPECT_EQ(load_fixture(id).id, id);
  EXPECT_EQ(code_of([] { load_fixture("NoSuchFigure"); }), ErrorCode::BadInput);
  EXPECT_EQ(eight_diagrams().size(), 8u);
}

TEST(O3B, RelationOnSmallGrid) {
  auto r = check_o3b_relation(2, 1, small_grid());
  EXPECT_TRUE(r.verified()) << r.detail;
  // n = 0: the proportions agree exactly when h(C) = h(A)
  EXPECT_TRUE(check_o3b_relation(1, 0, small_grid()).verified());
  auto eq = check_o3b_relation(3, 3, small_grid());
  EXPECT_TRUE(eq.verified());
  EXPECT_NE(eq.detail.find("m = n"), std::string::npos);
}

TEST(O3B, BadParameters) {
  auto g = small_grid();
  EXPECT_EQ(code_of([&] { check_o3b_relation(0, 0, g); }), ErrorCode::BadParameters);
  EXPECT_EQ(code_of([&] { check_o3b_relation(2, 3, g); }), ErrorCode::BadParameters);
  EXPECT_EQ(code_of([&] { check_o3b_relation(2, -1, g); }), ErrorCode::BadParameters);
  EXPECT_EQ(code_of([&] { check_o3b_relation(2, 1, {{Rational(1), Rational(0), Rational(1)}}); }),
            ErrorCode::BadParameters);
}

TEST(Report, OnlyFilter) {
  auto r = paper_report("prym");
  ASSERT_FALSE(r.empty());
  for (const auto& c : r) {
    EXPECT_EQ(c.id.rfind("prym", 0), 0u);
    EXPECT_TRUE(c.verified()) << c.id << ": " << c.detail;
  }
  EXPECT_TRUE(paper_report("nothing_matches").empty());
}

TEST(Report, DeterministicAndRoundTrips) {
  auto a = paper_report();
  auto b = paper_report();
  EXPECT_EQ(a, b);
  for (const auto& c : a) EXPECT_TRUE(c.verified()) << c.id << ": " << c.detail;
  auto text = reports_to_json(a);
  EXPECT_EQ(reports_from_json(text), a);
  EXPECT_EQ(reports_to_json(reports_from_json(text)), text);
  EXPECT_EQ(code_of([] { reports_from_json("bad"); }), ErrorCode::BadInput);
  EXPECT_EQ(code_of([] { reports_from_json("{\"claims\": 3}"); }), ErrorCode::BadInput);
}
