#include <gtest/gtest.h>

#include <sstream>

#include "amoeba/render.hpp"
#include "amoeba/report.hpp"

using namespace amoeba;

namespace {

GridWindow window(int nx, int ny) {
  GridWindow w;
  w.x0 = w.y0 = -6;
  w.x1 = w.y1 = 6;
  w.nx = nx;
  w.ny = ny;
  return w;
}

}  // namespace

TEST(Ppm, HeaderAndPixels) {
  const LaurentPoly2 p = parse_poly("1 + z + w");
  const AmoebaRaster r = rasterize(p, window(30, 20), 64, default_band(64));
  std::ostringstream os;
  write_ppm(r, os);
  const std::string s = os.str();
  const std::string header = "P6\n30 20\n255\n";
  ASSERT_EQ(s.substr(0, header.size()), header);
  ASSERT_EQ(s.size(), header.size() + 30 * 20 * 3);
  // Bottom-left cell (x, y) = (-6, -6) is in E_(0,0); it is the first pixel
  // of the last image row.
  const std::size_t off = header.size() + static_cast<std::size_t>(19) * 30 * 3;
  const Rgb want = component_color({0, 0});
  EXPECT_EQ(static_cast<unsigned char>(s[off]), want.r);
  EXPECT_EQ(static_cast<unsigned char>(s[off + 1]), want.g);
  EXPECT_EQ(static_cast<unsigned char>(s[off + 2]), want.b);
}

TEST(Ppm, PaletteIndexing) {
  EXPECT_EQ(component_color({0, 0}).r, kPalette[0].r);
  EXPECT_EQ(component_color({1, 2}).g, kPalette[7].g);
  EXPECT_EQ(component_color({3, 2}).b, kPalette[1].b);   // 17 mod 16
  EXPECT_EQ(component_color({-1, 0}).r, kPalette[11].r);  // -5 mod 16
  EXPECT_EQ(cell_color({CellState::Amoeba, {}}).r, 0);
  EXPECT_EQ(cell_color({CellState::Uncertain, {}}).g, 128);
}

TEST(Pgm, HeaderAndScaling) {
  CoamoebaRaster c;
  c.resolution = 4;
  c.hits.assign(16, 0);
  c.hits[5] = 9;
  c.hits[6] = 1;
  std::ostringstream os;
  write_pgm(c, os);
  const std::string s = os.str();
  const std::string header = "P5\n4 4\n255\n";
  ASSERT_EQ(s.substr(0, header.size()), header);
  ASSERT_EQ(s.size(), header.size() + 16);
  // Cell (1, 1) is image row 2; the maximum maps to 255.
  EXPECT_EQ(static_cast<unsigned char>(s[header.size() + 2 * 4 + 1]), 255);
  const int mid = static_cast<unsigned char>(s[header.size() + 2 * 4 + 2]);
  EXPECT_EQ(mid, static_cast<int>(std::lround(255.0 * std::log(2.0) / std::log(10.0))));
}

TEST(Svg, DeterministicWithLabels) {
  const LaurentPoly2 p = parse_poly("z^2*w - 4*z*w + z*w^2 + 1");
  const AmoebaRaster r = rasterize(p, window(80, 80), 128, default_band(128));
  const auto comps = find_components(p, r);
  std::ostringstream a, b;
  write_svg(r, comps, a);
  write_svg(r, comps, b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find(">(1,1)</text>"), std::string::npos);
  EXPECT_NE(a.str().find("fill=\"#000000\" d=\"M"), std::string::npos);
  EXPECT_EQ(a.str().rfind("</svg>\n"), a.str().size() - 7);
}

TEST(Svg, EmptyRasterHasBackgroundOnly) {
  AmoebaRaster r;
  r.window = window(10, 10);
  r.cells.assign(100, Cell{CellState::Complement, {0, 0}});
  std::ostringstream os;
  write_svg(r, {}, os);
  EXPECT_EQ(os.str().find("<path"), std::string::npos);
  EXPECT_NE(os.str().find("<rect"), std::string::npos);
}

TEST(Json, ComponentAndNewtonSchema) {
  const LaurentPoly2 p = parse_poly("1 + z + w");
  const Json n = to_json(newton_polygon(p));
  EXPECT_EQ(n["area2"], 1);
  EXPECT_EQ(n["vertices"].size(), 3u);
  EXPECT_EQ(n["lattice_points"].size(), 3u);
  const auto comps = find_components(p, rasterize(p, window(60, 60), 128, default_band(128)));
  const Json c = to_json(comps.front());
  EXPECT_TRUE(c["ord"].is_array());
  EXPECT_TRUE(c["seed"][0].is_number_float());
  EXPECT_TRUE(c["bounded"].is_boolean());
  EXPECT_TRUE(c["theta"].is_null());
  const Json e = error_json(SyntaxError(3, "bad"));
  EXPECT_EQ(e["error"]["class"], "input");
  EXPECT_EQ(e["error"]["offset"], 3);
}
