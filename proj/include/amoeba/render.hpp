#pragma once

// Image export: binary PPM for amoeba rasters, binary PGM for coamoeba hit
// counts, and a plain SVG with components, labels and optional boundaries.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "amoeba/amoeba.hpp"

namespace amoeba {

struct Rgb {
  std::uint8_t r, g, b;
};

inline constexpr std::array<Rgb, 16> kPalette = {{
    {230, 25, 75},   {60, 180, 75},   {255, 225, 25},  {0, 130, 200},
    {245, 130, 48},  {145, 30, 180},  {70, 240, 240},  {240, 50, 230},
    {210, 245, 60},  {250, 190, 212}, {0, 128, 128},   {220, 190, 255},
    {170, 110, 40},  {255, 250, 200}, {128, 0, 0},     {170, 255, 195},
}};

inline constexpr Rgb kAmoebaColor{0, 0, 0};
inline constexpr Rgb kUncertainColor{128, 128, 128};

inline Rgb component_color(LatticePoint ord) {
  const std::int64_t k = ((ord.x * 5 + ord.y) % 16 + 16) % 16;
  return kPalette[static_cast<std::size_t>(k)];
}

inline Rgb cell_color(const Cell& c) {
  switch (c.state) {
    case CellState::Amoeba: return kAmoebaColor;
    case CellState::Uncertain: return kUncertainColor;
    case CellState::Complement: return component_color(c.ord);
  }
  return kUncertainColor;
}

// Image rows run top to bottom, so the top row is the largest y.
inline void write_ppm(const AmoebaRaster& r, std::ostream& out) {
  const int nx = r.window.nx, ny = r.window.ny;
  out << "P6\n" << nx << ' ' << ny << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(nx) * 3);
  for (int j = ny - 1; j >= 0; --j) {
    for (int i = 0; i < nx; ++i) {
      const Rgb c = cell_color(r.at(i, j));
      row[3 * i] = static_cast<char>(c.r);
      row[3 * i + 1] = static_cast<char>(c.g);
      row[3 * i + 2] = static_cast<char>(c.b);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

// log(1 + hits) scaled so the largest count maps to 255.  Top row is arg w = pi.
inline void write_pgm(const CoamoebaRaster& c, std::ostream& out) {
  const int n = c.resolution;
  out << "P5\n" << n << ' ' << n << "\n255\n";
  std::uint32_t peak = 0;
  for (auto h : c.hits) peak = std::max(peak, h);
  const double scale = peak > 0 ? 255.0 / std::log1p(static_cast<double>(peak)) : 0.0;
  std::vector<char> row(static_cast<std::size_t>(n));
  for (int j = n - 1; j >= 0; --j) {
    for (int i = 0; i < n; ++i) {
      const double v = std::log1p(static_cast<double>(c.at(i, j))) * scale;
      row[i] = static_cast<char>(static_cast<std::uint8_t>(std::lround(std::min(255.0, v))));
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

// Horizontal runs of cells accepted by `pick`, as one path in image pixels.
template <class Pick>
std::string run_path(const AmoebaRaster& r, Pick pick) {
  std::string d;
  const int nx = r.window.nx, ny = r.window.ny;
  for (int j = 0; j < ny; ++j) {
    const int row = ny - 1 - j;
    for (int i = 0; i < nx;) {
      if (!pick(r.at(i, j))) {
        ++i;
        continue;
      }
      int e = i;
      while (e < nx && pick(r.at(e, j))) ++e;
      d += "M" + std::to_string(i) + " " + std::to_string(row) + "h" + std::to_string(e - i) +
           "v1h-" + std::to_string(e - i) + "z";
      i = e;
    }
  }
  return d;
}

}  // namespace detail

// One pixel per cell.  Components are drawn in palette colors with their
// order labels at the seeds; `boundaries` (in (x, y) coordinates) are drawn
// as polylines on top.
inline void write_svg(const AmoebaRaster& r, const std::vector<ComponentInfo>& comps,
                      std::ostream& out,
                      const std::vector<std::vector<std::pair<double, double>>>& boundaries = {}) {
  const GridWindow& w = r.window;
  const int nx = w.nx, ny = w.ny;
  auto px = [&](double x) { return (x - w.x0) / w.dx(); };
  auto py = [&](double y) { return ny - (y - w.y0) / w.dy(); };
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << nx << "\" height=\"" << ny
      << "\" viewBox=\"0 0 " << nx << ' ' << ny << "\" shape-rendering=\"crispEdges\">\n";
  out << "<rect width=\"" << nx << "\" height=\"" << ny << "\" fill=\"#ffffff\"/>\n";
  for (const auto& c : comps) {
    const std::string d = detail::run_path(r, [&](const Cell& cell) {
      return cell.state == CellState::Complement && cell.ord == c.ord;
    });
    if (!d.empty())
      out << "<path fill=\"" << detail::hex(component_color(c.ord)) << "\" d=\"" << d << "\"/>\n";
  }
  const std::string unc =
      detail::run_path(r, [](const Cell& cell) { return cell.state == CellState::Uncertain; });
  if (!unc.empty()) out << "<path fill=\"" << detail::hex(kUncertainColor) << "\" d=\"" << unc << "\"/>\n";
  const std::string am =
      detail::run_path(r, [](const Cell& cell) { return cell.state == CellState::Amoeba; });
  if (!am.empty()) out << "<path fill=\"" << detail::hex(kAmoebaColor) << "\" d=\"" << am << "\"/>\n";
  for (const auto& poly : boundaries) {
    if (poly.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" points=\"";
    for (std::size_t k = 0; k < poly.size(); ++k)
      out << (k ? " " : "") << detail::svg_num(px(poly[k].first)) << ','
          << detail::svg_num(py(poly[k].second));
    out << "\"/>\n";
  }
  const int font = std::max(8, std::min(nx, ny) / 30);
  for (const auto& c : comps)
    out << "<text x=\"" << detail::svg_num(px(c.seed_x)) << "\" y=\"" << detail::svg_num(py(c.seed_y))
        << "\" font-family=\"sans-serif\" font-size=\"" << font
        << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" fill=\"#000000\">(" << c.ord.x
        << ',' << c.ord.y << ")</text>\n";
  out << "</svg>\n";
}

}  // namespace amoeba
