#include <gtest/gtest.h>

#include <random>

#include "amoeba/harnack.hpp"

using namespace amoeba;

namespace {

const char* kCubic = "z^2*w - 4*z*w + z*w^2 + 1";

GridWindow square(double h, int n) {
  GridWindow w;
  w.x0 = w.y0 = -h;
  w.x1 = w.y1 = h;
  w.nx = w.ny = n;
  return w;
}

// Brute-force realness search over a grid of (arg b, arg c); arg a then
// follows from the first term.
double brute_residual(const LaurentPoly2& p, int n) {
  double best = 1e9;
  const double pi = std::numbers::pi;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double b = pi * i / n, c = pi * j / n;
      const Term& r = p.terms().front();
      const double a = -(std::arg(r.coef) + r.exp.a1 * b + r.exp.a2 * c);
      double worst = 0.0;
      for (const auto& t : p.terms()) {
        const double ph = std::arg(t.coef) + a + t.exp.a1 * b + t.exp.a2 * c;
        worst = std::max(worst, std::abs(std::remainder(ph, pi)));
      }
      best = std::min(best, worst);
    }
  return best;
}

}  // namespace

TEST(Realness, RotationsOfRealPolynomials) {
  const double pi = std::numbers::pi;
  const LaurentPoly2 p = parse_poly(kCubic);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int k = 0; k < 20; ++k) {
    const Complex a = std::polar(1.0, u(rng)), b = std::polar(1.5, u(rng)), c = std::polar(0.5, u(rng));
    const LaurentPoly2 q = torus_transform(p, a, b, c);
    const RealnessTransform r = realness_transform(q, 1e-9);
    EXPECT_TRUE(r.found);
    // Undoing the phases must give real coefficients.
    const LaurentPoly2 back =
        torus_transform(q, std::polar(1.0, r.arg_a), std::polar(1.0, r.arg_b), std::polar(1.0, r.arg_c));
    EXPECT_TRUE(is_real(back, 1e-9));
  }
}

TEST(Realness, NonRealCrossTerm) {
  const LaurentPoly2 p = parse_poly("1 + z + w + (0+1i)*z*w");
  const RealnessTransform r = realness_transform(p, 1e-9);
  EXPECT_FALSE(r.found);
  EXPECT_NEAR(r.residual, std::numbers::pi / 2, 1e-12);
  // No phase choice makes all four terms real.
  EXPECT_GT(brute_residual(p, 180), 0.1);
}

TEST(Realness, AgreesWithBruteForceOnRandomPhases) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> e(0, 3);
  for (int k = 0; k < 20; ++k) {
    std::vector<Term> ts;
    for (int i = 0; i < 4; ++i) ts.push_back({{e(rng), e(rng)}, std::polar(1.0, u(rng))});
    const LaurentPoly2 p(ts);
    const RealnessTransform r = realness_transform(p, 1e-9);
    if (r.found) {
      const LaurentPoly2 back =
          torus_transform(p, std::polar(1.0, r.arg_a), std::polar(1.0, r.arg_b), std::polar(1.0, r.arg_c));
      EXPECT_TRUE(is_real(back, 1e-9));
    } else {
      EXPECT_GT(brute_residual(p, 360), 1e-6);
    }
  }
}

TEST(Realness, CollinearSupport) {
  const LaurentPoly2 p = torus_transform(parse_poly("1 - 3*z*w + z^2*w^2"), 1.0, std::polar(1.0, 0.4),
                                         std::polar(1.0, 0.9));
  EXPECT_TRUE(realness_transform(p, 1e-9).found);
}

TEST(HarnackArea, LineIsMaximal) {
  const HarnackReport h = harnack_area_test(parse_poly("1 + z + w"), square(7, 300), {256, kAreaBand});
  EXPECT_EQ(h.polygon_area2, 1);
  EXPECT_NEAR(h.ratio, 1.0, 0.05);
  EXPECT_TRUE(h.verdict);
}

TEST(HarnackArea, NonRealFailsVerdict) {
  const HarnackReport h =
      harnack_area_test(parse_poly("1 + z + w + (0+1i)*z*w"), square(6, 120), {128, kAreaBand});
  EXPECT_FALSE(h.verdict);
}

TEST(HarnackArea, DegeneratePolygonRejected) {
  try {
    harnack_area_test(parse_poly("1 + z"), square(3, 10));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "degenerate_polygon");
  }
}

TEST(TwoToOne, LineInterior) {
  const LaurentPoly2 p = parse_poly("1 + z + w");
  const AmoebaRaster r = rasterize(p, square(4, 120), 512, default_band(512));
  const TwoToOneStats s = two_to_one_stats(p, r, 40, 3, 1024);
  EXPECT_EQ(s.samples, 40);
  EXPECT_EQ(s.exactly_two, 40);
  EXPECT_EQ(s.max_count, 2);
}

TEST(TwoToOne, PreimagesOfLineAreConjugate) {
  // Over an interior point the two torus preimages are complex conjugates.
  std::vector<TorusPoint> pts;
  ASSERT_TRUE(torus_preimages(parse_poly("1 + z + w"), 0.1, -0.2, 1024, pts));
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_NEAR(pts[0].arg_z, -pts[1].arg_z, 1e-9);
  EXPECT_NEAR(pts[0].arg_w, -pts[1].arg_w, 1e-9);
  const Complex z = std::polar(std::exp(0.1), pts[0].arg_z), w = std::polar(std::exp(-0.2), pts[0].arg_w);
  EXPECT_LT(std::abs(1.0 + z + w), 1e-9);
}

TEST(Theta, LineCenters) {
  const LaurentPoly2 p = parse_poly("1 + z + w");
  const auto comps = find_components(p, rasterize(p, square(6, 120), 256, default_band(256)));
  const ThetaReport t = theta_points(p, comps, 12, realness_transform(p, 1e-9));
  ASSERT_EQ(t.entries.size(), 3u);
  for (const auto& e : t.entries) {
    EXPECT_LT(e.distance, 1e-6);
    EXPECT_LT(e.radius, 1e-6);
    // E_(0,0) sits over (pi, pi); E_(1,0) over (pi, 0); E_(0,1) over (0, pi).
    const double pi = std::numbers::pi;
    const TorusPoint want = e.ord == LatticePoint{0, 0}   ? TorusPoint{pi, pi}
                            : e.ord == LatticePoint{1, 0} ? TorusPoint{pi, 0}
                                                          : TorusPoint{0, pi};
    EXPECT_LT(torus_distance(e.center, want), 1e-6);
  }
}

TEST(Theta, CircularMeanWraps) {
  const double pi = std::numbers::pi;
  const TorusPoint m = circular_mean({{pi - 0.01, 0.0}, {-pi + 0.01, 0.0}});
  EXPECT_NEAR(std::abs(m.arg_z), pi, 1e-12);
}
