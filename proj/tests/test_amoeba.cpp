#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "amoeba/amoeba.hpp"

using namespace amoeba;

namespace {

const char* kCubic = "z^2*w - 4*z*w + z*w^2 + 1";

// Amoeba of 1 + z + w: the three moduli 1, e^x, e^y satisfy the triangle
// inequality.  Returns the signed slack (negative inside the amoeba).
double line_slack(double x, double y) {
  const double a = 1.0, b = std::exp(x), c = std::exp(y);
  return std::max({a - b - c, b - a - c, c - a - b});
}

LatticePoint line_ord(double x, double y) {
  const double a = 1.0, b = std::exp(x), c = std::exp(y);
  if (a > b + c) return {0, 0};
  if (b > a + c) return {1, 0};
  return {0, 1};
}

GridWindow square(double h, int n) {
  GridWindow w;
  w.x0 = w.y0 = -h;
  w.x1 = w.y1 = h;
  w.nx = w.ny = n;
  return w;
}

}  // namespace

TEST(Membership, LineAgainstTriangleInequality) {
  const LaurentPoly2 p = parse_poly("1 + z + w");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const double x = u(rng), y = u(rng);
    const double s = line_slack(x, y);
    const MembershipResult m = membership(p, x, y, 256, default_band(256));
    if (s < -0.05) {
      EXPECT_EQ(m.state, CellState::Amoeba) << x << "," << y;
      ++checked;
    } else if (s > 0.2 * std::max({1.0, std::exp(x), std::exp(y)})) {
      ASSERT_EQ(m.state, CellState::Complement) << x << "," << y;
      EXPECT_EQ(m.ord, line_ord(x, y));
      ++checked;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(Membership, CubicOriginByDenseFiberEnumeration) {
  // At (0,0): enumerate w-roots over |z| = 1 at 4096 angles; the origin is in
  // the amoeba iff some root crosses |w| = 1.
  const LaurentPoly2 p = parse_poly(kCubic);
  // Roots sorted by modulus are continuous in arg z, so the origin lies in
  // the amoeba iff 0 is in the log-modulus range of the smaller or the larger
  // root.
  double lo[2] = {1e9, 1e9}, hi[2] = {-1e9, -1e9};
  for (int j = 0; j < 4096; ++j) {
    const Complex z = std::polar(1.0, kTwoPi * j / 4096);
    // w^2 z + w (z^2 - 4z) + 1
    const Complex a = z, b = z * z - 4.0 * z, c = 1.0;
    const Complex d = std::sqrt(b * b - 4.0 * a * c);
    double m[2] = {std::log(std::abs((-b + d) / (2.0 * a))), std::log(std::abs((-b - d) / (2.0 * a)))};
    if (m[0] > m[1]) std::swap(m[0], m[1]);
    for (int k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], m[k]);
      hi[k] = std::max(hi[k], m[k]);
    }
  }
  const bool oracle_in = (lo[0] < 0.0 && hi[0] > 0.0) || (lo[1] < 0.0 && hi[1] > 0.0);
  const MembershipResult m = membership(p, 0.0, 0.0, 256, default_band(256));
  EXPECT_EQ(oracle_in, m.state == CellState::Amoeba);
  EXPECT_EQ(exact_state(p, 0.0, 0.0).amoeba, oracle_in);
}

TEST(Membership, MonomialHasEmptyAmoeba) {
  const LaurentPoly2 p = parse_poly("z*w");
  const MembershipResult m = membership(p, 0.3, -2.0, 64, default_band(64));
  ASSERT_EQ(m.state, CellState::Complement);
  EXPECT_EQ(m.ord, (LatticePoint{1, 1}));
  const AmoebaRaster r = rasterize(p, square(3, 20), 64, default_band(64));
  EXPECT_EQ(r.count(CellState::Amoeba), 0u);
}

TEST(Raster, AgreesWithPointMembership) {
  const LaurentPoly2 p = parse_poly(kCubic);
  const GridWindow w = square(6, 60);
  const AmoebaRaster r = rasterize(p, w, 128, default_band(128));
  for (int j = 0; j < w.ny; j += 7)
    for (int i = 0; i < w.nx; i += 5) {
      const MembershipResult m = membership(p, w.cx(i), w.cy(j), 128, default_band(128));
      ASSERT_EQ(r.at(i, j).state, m.state);
      if (m.state == CellState::Complement) {
        ASSERT_EQ(r.at(i, j).ord, m.ord);
      }
    }
}

TEST(Raster, IndependentOfThreadCount) {
  const LaurentPoly2 p = parse_poly(kCubic);
  const GridWindow w = square(6, 64);
  setenv("AMOEBA_THREADS", "1", 1);
  const AmoebaRaster a = rasterize(p, w, 128, default_band(128));
  setenv("AMOEBA_THREADS", "3", 1);
  const AmoebaRaster b = rasterize(p, w, 128, default_band(128));
  unsetenv("AMOEBA_THREADS");
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    ASSERT_EQ(a.cells[k].state, b.cells[k].state);
    ASSERT_EQ(a.cells[k].ord, b.cells[k].ord);
  }
}

TEST(Components, LineAndCubic) {
  const auto line = find_components(parse_poly("1 + z + w"),
                                    rasterize(parse_poly("1 + z + w"), square(6, 120), 256, default_band(256)));
  ASSERT_EQ(line.size(), 3u);
  for (const auto& c : line) {
    EXPECT_FALSE(c.bounded);
    EXPECT_EQ(line_ord(c.seed_x, c.seed_y), c.ord);
    EXPECT_GT(line_slack(c.seed_x, c.seed_y), 0.0);
  }
  const LaurentPoly2 p = parse_poly(kCubic);
  const auto fig = find_components(p, rasterize(p, square(7, 160), 256, default_band(256)));
  ASSERT_EQ(fig.size(), 4u);
  int bounded = 0;
  for (const auto& c : fig) {
    bounded += c.bounded;
    if (c.bounded) {
      EXPECT_EQ(c.ord, (LatticePoint{1, 1}));
    }
  }
  EXPECT_EQ(bounded, 1);
}

TEST(Area, LineConvergesToPiSquaredOverTwo) {
  const LaurentPoly2 p = parse_poly("1 + z + w");
  const AreaEstimate a = amoeba_area(rasterize(p, square(7, 300), 256, 1e-3));
  EXPECT_TRUE(a.truncated);
  EXPECT_NEAR(a.estimate / (std::numbers::pi * std::numbers::pi / 2), 1.0, 0.05);
}

TEST(Area, MonotoneUnderRefinement) {
  const LaurentPoly2 p = parse_poly(kCubic);
  const AreaEstimate coarse = amoeba_area(rasterize(p, square(7, 100), 128, 1e-3));
  const AreaEstimate fine = amoeba_area(rasterize(p, square(7, 200), 256, 1e-3));
  EXPECT_LE(std::abs(fine.estimate - coarse.estimate), coarse.half_width);
}

TEST(Boundary, LineBoundaryIsRealArc) {
  // The boundary of E_(0,0) for x < 0 is y = log(1 - e^x), lifted to z, w < 0.
  const LaurentPoly2 p = parse_poly("1 + z + w");
  for (double x : {-3.0, -1.0, -0.3}) {
    const auto q = ray_exit(p, {0, 0}, x, -6.0, 0.0, 1.0, 20.0, 1e-11);
    ASSERT_TRUE(q.has_value());
    EXPECT_NEAR(q->second, std::log(1 - std::exp(x)), 1e-9);
    const Lift l = lift_point(p, q->first, q->second);
    EXPECT_LT(l.gap, 1e-8);
    EXPECT_NEAR(std::abs(wrap_angle(l.arg_z)), std::numbers::pi, 1e-6);
    EXPECT_NEAR(std::abs(wrap_angle(l.arg_w)), std::numbers::pi, 1e-6);
    EXPECT_LT(std::abs(1.0 + l.z + l.w), 1e-8);
  }
}

TEST(Boundary, TraceStaysOnBoundary) {
  const LaurentPoly2 p = parse_poly(kCubic);
  const auto comps = find_components(p, rasterize(p, square(7, 140), 256, default_band(256)));
  for (const auto& c : comps) {
    const auto pts = trace_boundary(p, c, 12, 1e-9);
    ASSERT_FALSE(pts.empty());
    for (auto [x, y] : pts) EXPECT_LT(lift_point(p, x, y).gap, 1e-6);
  }
}

TEST(Coamoeba, LineCoversAnOpenTriangleRegion) {
  // The coamoeba of 1 + z + w is two open triangles: half of the torus.
  CoamoebaOptions o;
  o.resolution = 64;
  o.samples = 81;
  o.n_theta = 256;
  const CoamoebaRaster c = coamoeba_raster(parse_poly("1 + z + w"), o);
  const double frac = static_cast<double>(c.nonzero()) / c.hits.size();
  // Finite sampling of the real parameter leaves gaps near the corners.
  EXPECT_GT(frac, 0.2);
  EXPECT_LT(frac, 0.6);
  // (0, 0) is never hit: 1 + |z| + |w| > 0.
  EXPECT_EQ(c.at(angle_index(0.01, 64), angle_index(0.01, 64)), 0u);
  // For arg z = 2, arg(-1 - z) sweeps (pi, pi + 2) as |z| grows.
  EXPECT_GT(c.at(angle_index(2.0, 64), angle_index(4.0, 64)), 0u);
}

TEST(Window, Validation) {
  GridWindow w;
  w.x0 = 1;
  w.x1 = 0;
  EXPECT_THROW(w.validate(), Error);
  EXPECT_THROW(membership(parse_poly("1+z"), 0, 0, 4, 0.1), Error);
}
