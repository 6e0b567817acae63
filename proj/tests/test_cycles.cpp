#include <gtest/gtest.h>

#include <map>

#include "amoeba/cycles.hpp"

using namespace amoeba;

namespace {

GridWindow square(double h, int n) {
  GridWindow w;
  w.x0 = w.y0 = -h;
  w.x1 = w.y1 = h;
  w.nx = w.ny = n;
  return w;
}

EndpointClass end_at(LatticePoint d, Complex anchor = {}) {
  EndpointClass e = classify_direction(d);
  if (e.kind == EndpointClass::Kind::PPoint || e.kind == EndpointClass::Kind::QPoint) {
    e.anchor = anchor;
    e.anchored = true;
  }
  return e;
}

CycleSpec sigma(std::vector<EndpointClass> ends) {
  ComponentInfo c;
  c.bounded = ends.empty();
  return build_sigma(c, ends, {0.0, 0.0});
}

struct Built {
  std::vector<ComponentInfo> comps;
  std::map<LatticePoint, CycleSpec> specs;
};

Built build_all(const char* text, int n) {
  const LaurentPoly2 p = parse_poly(text);
  Built b;
  b.comps = find_components(p, rasterize(p, square(7, n), 256, default_band(256)));
  const RealnessTransform rt = realness_transform(p, 1e-9);
  for (const auto& c : b.comps) b.specs.emplace(c.ord, construct_cycle(p, c, rt, {16, 1e-9}));
  return b;
}

}  // namespace

TEST(Sigma, TableRowsAndClosure) {
  const Complex p1 = -1.0, p2 = -2.0, q = -3.0;
  struct Case {
    std::vector<EndpointClass> ends;
    const char* row;
    std::size_t segments;
  };
  const std::vector<Case> cases = {
      {{}, "bounded", 0},
      {{end_at({0, -1}, p1), end_at({-1, 0}, q)}, "U2^0", 2},
      {{end_at({0, -1}, p1), end_at({0, -1}, p2)}, "U1^0", 1},
      {{end_at({-1, 0}, q), end_at({-1, 0}, p2)}, "U1^0", 1},
      {{end_at({-1, -1}), end_at({0, -1}, p1)}, "U3^1", 1},
      {{end_at({-1, 0}, q), end_at({-2, -1})}, "U3^1", 1},
      {{end_at({0, -1}, p1), end_at({1, 1})}, "U1^1", 1},
      {{end_at({0, -1}, p1), end_at({-1, 1})}, "U2^1", 2},
      {{end_at({-1, 0}, q), end_at({1, 1})}, "U1^1", 1},
      {{end_at({-1, 0}, q), end_at({1, -1})}, "U2^1", 2},
      {{end_at({-1, -1}), end_at({1, 2})}, "U3^2", 1},
      {{end_at({-1, -1}), end_at({-1, -2})}, "U4^2", 0},
      {{end_at({1, -2}), end_at({1, 1})}, "U1^2", 0},
      {{end_at({-2, 1}), end_at({1, -2})}, "U2^2", 2},
  };
  for (const auto& c : cases) {
    const CycleSpec s = sigma(c.ends);
    EXPECT_EQ(s.row, c.row);
    EXPECT_EQ(s.segments.size(), c.segments) << c.row;
    EXPECT_TRUE(closes_up(s)) << c.row;
  }
}

TEST(Sigma, UnanchoredFiniteEndIsRejected) {
  EndpointClass e = classify_direction({0, -1});
  EXPECT_THROW(sigma({e, end_at({1, 1})}), Error);
}

TEST(Sigma, BrokenSegmentFailsClosure) {
  CycleSpec s = sigma({end_at({0, -1}, -1.0), end_at({-1, 0}, -1.0)});
  s.segments.pop_back();
  EXPECT_FALSE(closes_up(s));
}

TEST(Cycles, LineRowsAndAnchors) {
  const Built b = build_all("1 + z + w", 140);
  ASSERT_EQ(b.specs.size(), 3u);
  EXPECT_EQ(b.specs.at({0, 0}).row, "U2^0");
  EXPECT_EQ(b.specs.at({1, 0}).row, "U1^1");
  EXPECT_EQ(b.specs.at({0, 1}).row, "U1^1");
  for (const auto& e : b.specs.at({0, 0}).ends) EXPECT_LT(std::abs(e.anchor + 1.0), 1e-12);
  for (const auto& [ord, s] : b.specs) EXPECT_LT(ray_deviation(s), 1e-6);
}

TEST(Cycles, CubicRowsClosureAndLinking) {
  const char* cubic = "z^2*w - 4*z*w + z*w^2 + 1";
  const Built b = build_all(cubic, 140);
  ASSERT_EQ(b.specs.size(), 4u);
  EXPECT_EQ(b.specs.at({1, 1}).row, "bounded");
  EXPECT_EQ(b.specs.at({0, 0}).row, "U2^2");
  EXPECT_EQ(b.specs.at({2, 1}).row, "U1^2");
  EXPECT_EQ(b.specs.at({1, 2}).row, "U1^2");
  const LaurentPoly2 p = parse_poly(cubic);
  for (const auto& c : b.comps) {
    if (c.bounded) continue;
    const ClosureReport r = verify_closure(p, c, b.specs.at(c.ord));
    EXPECT_TRUE(r.passed) << r.worst;
  }
  const LinkMatrix m = linking_matrix(p, b.comps, 256, default_band(256));
  EXPECT_TRUE(is_identity(m));
}

TEST(Cycles, NonSmoothCurveHasMultiValuedLift) {
  // (1 + z)(1 + w): the amoeba is two lines and the boundary lift is not a
  // single argument pair.
  const LaurentPoly2 p = parse_poly("1 + z + w + z*w");
  const auto comps = find_components(p, rasterize(p, square(6, 120), 256, default_band(256)));
  ASSERT_EQ(comps.size(), 4u);
  try {
    construct_cycle(p, comps.front(), realness_transform(p, 1e-9), {8, 1e-9});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "multi_valued_lift");
  }
}

TEST(Linking, IdentityCheck) {
  EXPECT_TRUE(is_identity({{1, 0}, {0, -1}}));
  EXPECT_FALSE(is_identity({{0, 1}, {1, 0}}));
}
