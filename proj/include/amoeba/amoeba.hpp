#pragma once

// Amoeba membership, rasterization, complement components, area, boundary
// tracing and coamoeba sampling.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "amoeba/error.hpp"
#include "amoeba/fiber.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/parallel.hpp"
#include "amoeba/poly.hpp"

namespace amoeba {

inline double default_band(int n_theta) {
  return std::max(kTwoPi / n_theta, 1e-3);
}

enum class CellState : std::uint8_t { Amoeba, Complement, Uncertain };

struct MembershipResult {
  CellState state = CellState::Uncertain;
  LatticePoint ord;  // meaningful only for Complement
  AxisVerdict w, z;  // evidence from each axis
};

inline MembershipResult combine(const LaurentPoly2& p, const AxisVerdict& w, const AxisVerdict& z) {
  MembershipResult m;
  m.w = w;
  m.z = z;
  if (w.band_hit || w.varies || z.band_hit || z.varies)
    m.state = CellState::Amoeba;
  else if (w.near || z.near || w.failed || z.failed)
    m.state = CellState::Uncertain;
  else {
    m.state = CellState::Complement;
    m.ord = {z.count + p.min_a1(), w.count + p.min_a2()};
  }
  return m;
}

// Root-counting membership at (x, y): w-fibers over |z| = e^x and z-fibers
// over |w| = e^y, each sampled at n_theta angles.
inline MembershipResult membership(const LaurentPoly2& p, double x, double y, int n_theta,
                                   double band) {
  if (n_theta < 8) throw input_error("bad_param", "n_theta must be at least 8");
  if (!(band > 0.0)) throw input_error("bad_param", "band must be positive");
  const FiberProfile fw = fiber_profile(p, Axis::W, x, n_theta, band);
  const FiberProfile fz = fiber_profile(p, Axis::Z, y, n_theta, band);
  return combine(p, classify(fw, y, band), classify(fz, x, band));
}

struct GridWindow {
  double x0 = -6, x1 = 6, y0 = -6, y1 = 6;
  int nx = 400, ny = 400;

  void validate() const {
    if (!(x0 < x1) || !(y0 < y1) || nx < 2 || ny < 2)
      throw input_error("bad_window", "window needs x0<x1, y0<y1 and at least 2x2 cells");
  }
  double dx() const { return (x1 - x0) / nx; }
  double dy() const { return (y1 - y0) / ny; }
  double cx(int i) const { return x0 + (i + 0.5) * dx(); }
  double cy(int j) const { return y0 + (j + 0.5) * dy(); }
  double cell_area() const { return dx() * dy(); }
  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

struct Cell {
  CellState state = CellState::Uncertain;
  LatticePoint ord;
};

struct AmoebaRaster {
  GridWindow window;
  int n_theta = 256;
  double band = 0.0;
  std::vector<Cell> cells;  // row-major, row j = y index, j = 0 at y0

  const Cell& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * window.nx + i]; }
  std::size_t count(CellState s) const {
    return static_cast<std::size_t>(
        std::count_if(cells.begin(), cells.end(), [s](const Cell& c) { return c.state == s; }));
  }
};

// Every cell agrees bit for bit with membership() at its center: the column
// and row profiles are exactly the ones membership() would build.
inline AmoebaRaster rasterize(const LaurentPoly2& p, const GridWindow& window, int n_theta,
                              double band) {
  window.validate();
  if (n_theta < 8) throw input_error("bad_param", "n_theta must be at least 8");
  AmoebaRaster r;
  r.window = window;
  r.n_theta = n_theta;
  r.band = band;
  std::vector<FiberProfile> cols(window.nx), rows(window.ny);
  parallel_for(window.nx, [&](std::size_t i) {
    cols[i] = fiber_profile(p, Axis::W, window.cx(static_cast<int>(i)), n_theta, band);
  });
  parallel_for(window.ny, [&](std::size_t j) {
    rows[j] = fiber_profile(p, Axis::Z, window.cy(static_cast<int>(j)), n_theta, band);
  });
  r.cells.resize(static_cast<std::size_t>(window.nx) * window.ny);
  parallel_for(window.ny, [&](std::size_t j) {
    const double y = window.cy(static_cast<int>(j));
    for (int i = 0; i < window.nx; ++i) {
      const MembershipResult m =
          combine(p, classify(cols[i], y, band), classify(rows[j], window.cx(i), band));
      r.cells[j * window.nx + i] = {m.state, m.ord};
    }
  });
  return r;
}

// ---------------------------------------------------------------------------
// Components

struct ComponentInfo {
  int id = 0;
  LatticePoint ord;
  double seed_x = 0.0, seed_y = 0.0;
  bool bounded = false;
  bool touches_window = false;
  std::size_t cells = 0;
  Cone2 cone;
  GridWindow window;  // raster window the component was found in
};

// 4-connected labels of Complement cells; -1 elsewhere.  Throws if a region
// mixes orders, which means the raster is too coarse for a thin tentacle.
inline std::vector<int> label_components(const AmoebaRaster& r) {
  const int nx = r.window.nx, ny = r.window.ny;
  std::vector<int> labels(r.cells.size(), -1);
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < r.cells.size(); ++start) {
    if (r.cells[start].state != CellState::Complement || labels[start] >= 0) continue;
    const LatticePoint ord = r.cells[start].ord;
    labels[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t c = stack.back();
      stack.pop_back();
      const int i = static_cast<int>(c % nx), j = static_cast<int>(c / nx);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = i + di[k], b = j + dj[k];
        if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
        const std::size_t n = static_cast<std::size_t>(b) * nx + a;
        if (r.cells[n].state != CellState::Complement || labels[n] >= 0) continue;
        if (!(r.cells[n].ord == ord))
          throw numerical_error("inconsistent_raster",
                                "adjacent complement cells carry different orders; refine the raster");
        labels[n] = next;
        stack.push_back(n);
      }
    }
    ++next;
  }
  return labels;
}

inline std::vector<ComponentInfo> find_components(const LaurentPoly2& p, const AmoebaRaster& r) {
  const std::vector<int> labels = label_components(r);
  const int nx = r.window.nx, ny = r.window.ny;
  const NewtonPolygon np = newton_polygon(p);
  int n_labels = 0;
  for (int l : labels) n_labels = std::max(n_labels, l + 1);

  // Depth of each cell: BFS distance to the nearest non-member cell or the
  // window edge.  The deepest cell (first in row-major order) is the seed.
  std::vector<int> depth(labels.size(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t c = 0; c < labels.size(); ++c) {
    if (labels[c] < 0) continue;
    const int i = static_cast<int>(c % nx), j = static_cast<int>(c / nx);
    bool edge = i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
    if (!edge) {
      edge = labels[c - 1] != labels[c] || labels[c + 1] != labels[c] ||
             labels[c - nx] != labels[c] || labels[c + nx] != labels[c];
    }
    if (edge) {
      depth[c] = 0;
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    const int i = static_cast<int>(c % nx), j = static_cast<int>(c / nx);
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int a = i + di[k], b = j + dj[k];
      if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
      const std::size_t n = static_cast<std::size_t>(b) * nx + a;
      if (labels[n] != labels[c] || depth[n] >= 0) continue;
      depth[n] = depth[c] + 1;
      queue.push_back(n);
    }
  }

  std::vector<ComponentInfo> out(n_labels);
  std::vector<int> best(n_labels, -1);
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const int l = labels[c];
    if (l < 0) continue;
    auto& comp = out[l];
    const int i = static_cast<int>(c % nx), j = static_cast<int>(c / nx);
    comp.id = l;
    comp.ord = r.cells[c].ord;
    ++comp.cells;
    if (i == 0 || j == 0 || i == nx - 1 || j == ny - 1) comp.touches_window = true;
    if (depth[c] > best[l]) {
      best[l] = depth[c];
      comp.seed_x = r.window.cx(i);
      comp.seed_y = r.window.cy(j);
    }
  }
  std::map<LatticePoint, int> seen;
  for (auto& comp : out) {
    if (locate(np, comp.ord).where == Location::Outside)
      throw verification_error("ord_outside_polygon", "component order is not in the Newton polygon");
    if (auto [it, fresh] = seen.emplace(comp.ord, comp.id); !fresh)
      throw verification_error("ord_not_injective",
                               "two components share order (" + std::to_string(comp.ord.x) + "," +
                                   std::to_string(comp.ord.y) + ")");
    comp.cone = dual_cone(np, comp.ord);
    comp.bounded = !comp.touches_window && comp.cone.bounded();
    comp.window = r.window;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Area

struct AreaEstimate {
  double estimate = 0.0;
  double half_width = 0.0;
  bool truncated = false;  // amoeba reaches the window edge
};

inline AreaEstimate amoeba_area(const AmoebaRaster& r) {
  const int nx = r.window.nx, ny = r.window.ny;
  std::size_t amoeba = 0, uncertain = 0, rim = 0;
  bool truncated = false;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const CellState s = r.at(i, j).state;
      const bool border = i == 0 || j == 0 || i == nx - 1 || j == ny - 1;
      if (s != CellState::Complement && border) truncated = true;
      if (s == CellState::Uncertain) ++uncertain;
      if (s != CellState::Amoeba) continue;
      ++amoeba;
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        const int a = i + di[k], b = j + dj[k];
        if (a < 0 || b < 0 || a >= nx || b >= ny) continue;
        if (r.at(a, b).state != CellState::Amoeba) {
          ++rim;
          break;
        }
      }
    }
  }
  const double ca = r.window.cell_area();
  return {ca * (amoeba + 0.5 * uncertain), ca * (0.5 * uncertain + rim), truncated};
}

// ---------------------------------------------------------------------------
// Refined point classification, used where positions matter to well below a
// cell: boundary tracing, lifting and closure checks.

struct ExactOptions {
  int n_theta = 256;
};

struct ExactState {
  bool amoeba = false;
  LatticePoint ord;
};

inline ExactState exact_state(const LaurentPoly2& p, double x, double y, const ExactOptions& o = {}) {
  ExactState st;
  int cz = 0, cw = 0;
  if (p.w_span() > 0) {
    const SliceVerdict v = classify(refined_slice(p, Axis::W, x, o.n_theta), y);
    st.amoeba |= v.inside;
    cw = v.count;
  }
  if (p.z_span() > 0) {
    const SliceVerdict v = classify(refined_slice(p, Axis::Z, y, o.n_theta), x);
    st.amoeba |= v.inside;
    cz = v.count;
  }
  st.ord = {cz + p.min_a1(), cw + p.min_a2()};
  return st;
}

inline bool in_component(const LaurentPoly2& p, LatticePoint ord, double x, double y,
                         const ExactOptions& o = {}) {
  const ExactState s = exact_state(p, x, y, o);
  return !s.amoeba && s.ord == ord;
}

// Point of the curve V over a boundary point of the amoeba: the slice
// endpoint (over both axes) closest to the given point.
struct Lift {
  Complex z{}, w{};
  double arg_z = 0.0, arg_w = 0.0;
  double gap = std::numeric_limits<double>::infinity();  // log-distance to the fiber
};

inline Lift lift_point(const LaurentPoly2& p, double x, double y, const ExactOptions& o = {}) {
  Lift best;
  auto consider = [&](const RefinedSlice& s, double t) {
    for (std::size_t k = 0; k < s.lo.size(); ++k) {
      for (const SliceEnd* e : {&s.lo[k], &s.hi[k]}) {
        if (!std::isfinite(e->value)) continue;
        const double gap = std::abs(e->value - t);
        if (gap >= best.gap) continue;
        best.gap = gap;
        const Complex fixed = std::polar(std::exp(s.coord), e->theta);
        if (s.axis == Axis::W) {
          best.z = fixed;
          best.w = e->root;
        } else {
          best.z = e->root;
          best.w = fixed;
        }
      }
    }
  };
  if (p.w_span() > 0) consider(refined_slice(p, Axis::W, x, o.n_theta), y);
  if (p.z_span() > 0) consider(refined_slice(p, Axis::Z, y, o.n_theta), x);
  best.arg_z = std::arg(best.z);
  best.arg_w = std::arg(best.w);
  return best;
}

// Bisection on the segment from an inside point to an outside point.
inline std::pair<double, double> bisect_boundary(const LaurentPoly2& p, LatticePoint ord,
                                                 double xi, double yi, double xo, double yo,
                                                 double pos_tol, const ExactOptions& o = {}) {
  const double len = std::hypot(xo - xi, yo - yi);
  double a = 0.0, b = 1.0;
  while ((b - a) * len > pos_tol) {
    const double m = 0.5 * (a + b);
    if (in_component(p, ord, xi + m * (xo - xi), yi + m * (yo - yi), o))
      a = m;
    else
      b = m;
  }
  const double m = 0.5 * (a + b);
  return {xi + m * (xo - xi), yi + m * (yo - yi)};
}

// Walks from (x, y) in direction (ux, uy) until leaving the component, then
// bisects.  Components are convex, so the first exit is the only one.
inline std::optional<std::pair<double, double>> ray_exit(const LaurentPoly2& p, LatticePoint ord,
                                                         double x, double y, double ux, double uy,
                                                         double max_len, double pos_tol,
                                                         const ExactOptions& o = {}) {
  double t_in = 0.0, t = 0.05;
  while (true) {
    if (t > max_len) return std::nullopt;
    if (!in_component(p, ord, x + t * ux, y + t * uy, o)) break;
    t_in = t;
    t *= 2.0;
  }
  return bisect_boundary(p, ord, x + t_in * ux, y + t_in * uy, x + t * ux, y + t * uy, pos_tol, o);
}

// Boundary point of an unbounded component beside its end number `end`, at
// distance `t` along the end's direction from the seed.  The search runs
// perpendicular to the edge, away from the cone's interior.
inline std::optional<std::pair<double, double>> edge_boundary_point(
    const LaurentPoly2& p, const ComponentInfo& c, std::size_t end, double t, double pos_tol,
    const ExactOptions& o = {}) {
  const auto& g = c.cone.generators;
  if (g.empty()) return std::nullopt;
  const LatticePoint d = c.cone.kind == Cone2::Kind::Ray ? g[0] : g[std::min(end, g.size() - 1)];
  const double norm = std::hypot(d.x, d.y);
  const double ux = d.x / norm, uy = d.y / norm;
  // First end: rotate clockwise; second end: counter-clockwise.
  const double px = end == 0 ? uy : -uy, py = end == 0 ? -ux : ux;
  const double fx = c.seed_x + t * ux, fy = c.seed_y + t * uy;
  if (!in_component(p, c.ord, fx, fy, o)) return std::nullopt;
  return ray_exit(p, c.ord, fx, fy, px, py, 1e3, pos_tol, o);
}

// Boundary points of a component: exits of n_points rays from the seed,
// plus (for unbounded components) perpendicular chords beside each cone edge.
inline std::vector<std::pair<double, double>> trace_boundary(const LaurentPoly2& p,
                                                             const ComponentInfo& c, int n_points,
                                                             double pos_tol,
                                                             const ExactOptions& o = {},
                                                             int* skipped = nullptr) {
  const GridWindow& win = c.window;
  const double reach = std::hypot(win.x1 - win.x0, win.y1 - win.y0);
  // Jobs: n_points rays, then chords at t = 0.5, 1, 2, ... beside each end.
  std::vector<std::pair<std::size_t, double>> chords;
  if (!c.bounded) {
    const std::size_t n_ends = c.cone.kind == Cone2::Kind::Ray ? 2 : c.cone.generators.size();
    for (std::size_t e = 0; e < n_ends; ++e)
      for (double t = 0.5; t < reach; t *= 2.0) chords.push_back({e, t});
  }
  const std::size_t n_rays = static_cast<std::size_t>(std::max(n_points, 0));
  std::vector<std::optional<std::pair<double, double>>> found(n_rays + chords.size());
  parallel_for(found.size(), [&](std::size_t k) {
    if (k < n_rays) {
      const double a = kTwoPi * static_cast<double>(k) / n_points;
      found[k] = ray_exit(p, c.ord, c.seed_x, c.seed_y, std::cos(a), std::sin(a), reach, pos_tol, o);
    } else {
      const auto [e, t] = chords[k - n_rays];
      found[k] = edge_boundary_point(p, c, e, t, pos_tol, o);
    }
  });
  std::vector<std::pair<double, double>> pts;
  int miss = 0;
  for (std::size_t k = 0; k < found.size(); ++k) {
    const auto& q = found[k];
    if (q && win.contains(q->first, q->second))
      pts.push_back(*q);
    else if (k < n_rays)
      ++miss;
  }
  if (skipped) *skipped = miss;
  if (pts.empty()) throw numerical_error("no_boundary", "component has no boundary inside the window");
  return pts;
}

// ---------------------------------------------------------------------------
// Coamoeba

struct CoamoebaRaster {
  int resolution = 0;
  std::vector<std::uint32_t> hits;  // row-major, row = arg w index, column = arg z index

  std::uint32_t at(int i, int j) const { return hits[static_cast<std::size_t>(j) * resolution + i]; }
  std::size_t nonzero() const {
    return static_cast<std::size_t>(std::count_if(hits.begin(), hits.end(), [](auto h) { return h > 0; }));
  }
};

inline int angle_index(double a, int res) {
  int i = static_cast<int>(std::floor((wrap_angle(a) + std::numbers::pi) / kTwoPi * res));
  return ((i % res) + res) % res;
}

struct CoamoebaOptions {
  int resolution = 256;
  double t0 = -8.0, t1 = 8.0;  // log-modulus range sampled on each axis
  int samples = 161;
  int n_theta = 512;
};

// Arguments of curve points over a grid of (log-modulus, angle) pairs.  Both
// fiber directions are sampled so curves containing axis-parallel lines
// (z = const or w = const) still leave hits.
inline CoamoebaRaster coamoeba_raster(const LaurentPoly2& p, const CoamoebaOptions& o = {}) {
  if (o.resolution < 2 || o.samples < 1 || o.n_theta < 8)
    throw input_error("bad_param", "coamoeba resolution/samples/n_theta too small");
  const int res = o.resolution;
  CoamoebaRaster out;
  out.resolution = res;
  out.hits.assign(static_cast<std::size_t>(res) * res, 0);
  for (Axis axis : {Axis::W, Axis::Z}) {
    if ((axis == Axis::W ? p.w_span() : p.z_span()) == 0) continue;
    std::vector<std::vector<std::pair<int, int>>> local(o.samples);
    parallel_for(o.samples, [&](std::size_t s) {
      const double t = o.samples == 1 ? o.t0 : o.t0 + (o.t1 - o.t0) * s / (o.samples - 1);
      for (int j = 0; j < o.n_theta; ++j) {
        const double th = kTwoPi * j / o.n_theta;
        std::vector<Complex> r;
        if (!detail::try_fiber(p, axis, std::polar(std::exp(t), th), r)) continue;
        for (const auto& root : r) {
          if (root == Complex{}) continue;
          const int a = angle_index(th, res), b = angle_index(std::arg(root), res);
          local[s].push_back(axis == Axis::W ? std::pair{a, b} : std::pair{b, a});
        }
      }
    });
    for (const auto& v : local)
      for (auto [i, j] : v) ++out.hits[static_cast<std::size_t>(j) * res + i];
  }
  return out;
}

}  // namespace amoeba
