#pragma once

// Newton polygon of a Laurent polynomial, lattice points, dual cones and
// end classification.  Everything here is exact integer arithmetic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "amoeba/error.hpp"
#include "amoeba/poly.hpp"

namespace amoeba {

struct LatticePoint {
  int x = 0;
  int y = 0;
  auto operator<=>(const LatticePoint&) const = default;
};

struct NewtonPolygon {
  std::vector<LatticePoint> vertices;  // CCW, starting at the lexicographically smallest
  std::int64_t area2 = 0;              // twice the Euclidean area
  std::vector<LatticePoint> support;   // exponents of the source polynomial

  bool degenerate() const { return area2 == 0; }
};

namespace detail {

inline std::int64_t cross(LatticePoint o, LatticePoint a, LatticePoint b) {
  return static_cast<std::int64_t>(a.x - o.x) * (b.y - o.y) -
         static_cast<std::int64_t>(a.y - o.y) * (b.x - o.x);
}

inline LatticePoint primitive(LatticePoint v) {
  const int g = std::gcd(std::abs(v.x), std::abs(v.y));
  return g == 0 ? v : LatticePoint{v.x / g, v.y / g};
}

}  // namespace detail

// Monotone chain hull; collinear points are dropped.
inline NewtonPolygon newton_polygon(const LaurentPoly2& p) {
  NewtonPolygon np;
  for (const auto& t : p.terms()) np.support.push_back({t.exp.a1, t.exp.a2});
  std::vector<LatticePoint> pts = np.support;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) {
    np.vertices = pts;
    return np;
  }
  std::vector<LatticePoint> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& q : pts) {
    while (k >= 2 && detail::cross(hull[k - 2], hull[k - 1], q) <= 0) --k;
    hull[k++] = q;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && detail::cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  np.vertices = hull;
  if (hull.size() >= 3) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const auto& a = hull[i];
      const auto& b = hull[(i + 1) % hull.size()];
      s += static_cast<std::int64_t>(a.x) * b.y - static_cast<std::int64_t>(b.x) * a.y;
    }
    np.area2 = s;
  } else {
    // All support points collinear: keep the two extreme ends.
    np.vertices = {pts.front(), pts.back()};
  }
  return np;
}

// Position of a point relative to the polygon.
enum class Location { Outside, Vertex, Edge, Interior };

struct PointLocation {
  Location where = Location::Outside;
  std::size_t index = 0;  // vertex index, or edge index (edge i runs v[i] -> v[i+1])
};

inline PointLocation locate(const NewtonPolygon& np, LatticePoint q) {
  const auto& v = np.vertices;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == q) return {Location::Vertex, i};
  if (v.size() == 1) return {};
  if (v.size() == 2) {
    if (detail::cross(v[0], v[1], q) != 0) return {};
    const std::int64_t d1 = static_cast<std::int64_t>(q.x - v[0].x) * (v[1].x - v[0].x) +
                            static_cast<std::int64_t>(q.y - v[0].y) * (v[1].y - v[0].y);
    const std::int64_t len = static_cast<std::int64_t>(v[1].x - v[0].x) * (v[1].x - v[0].x) +
                             static_cast<std::int64_t>(v[1].y - v[0].y) * (v[1].y - v[0].y);
    if (d1 > 0 && d1 < len) return {Location::Edge, 0};
    return {};
  }
  std::size_t on_edge = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t c = detail::cross(v[i], v[(i + 1) % v.size()], q);
    if (c < 0) return {};
    if (c == 0) on_edge = i;
  }
  if (on_edge != v.size()) return {Location::Edge, on_edge};
  return {Location::Interior, 0};
}

// All integer points of the hull, lexicographic.
inline std::vector<LatticePoint> lattice_points(const NewtonPolygon& np) {
  std::vector<LatticePoint> out;
  if (np.vertices.empty()) return out;
  int x0 = np.vertices[0].x, x1 = x0, y0 = np.vertices[0].y, y1 = y0;
  for (const auto& v : np.vertices) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  for (int x = x0; x <= x1; ++x)
    for (int y = y0; y <= y1; ++y)
      if (locate(np, {x, y}).where != Location::Outside) out.push_back({x, y});
  return out;
}

// Cone of linear functionals maximized at a point of the polygon.  For a
// full-dimensional polygon this is {0} (interior), a ray (edge interior) or a
// sector (vertex).  Degenerate polygons additionally produce a half-plane (end of
// a segment), a line (inside a segment) or the whole plane (single point); these
// are allowed here but rejected by Harnack-specific code.
struct Cone2 {
  enum class Kind { Zero, Ray, Sector, HalfPlane, Line, Plane };
  Kind kind = Kind::Zero;
  std::vector<LatticePoint> generators;  // primitive; CCW for sectors

  bool bounded() const { return kind == Kind::Zero; }
};

inline const char* to_string(Cone2::Kind k) {
  switch (k) {
    case Cone2::Kind::Zero: return "zero";
    case Cone2::Kind::Ray: return "ray";
    case Cone2::Kind::Sector: return "sector";
    case Cone2::Kind::HalfPlane: return "half_plane";
    case Cone2::Kind::Line: return "line";
    case Cone2::Kind::Plane: return "plane";
  }
  return "?";
}

namespace detail {
// Outward normal of a CCW edge a -> b.
inline LatticePoint outward_normal(LatticePoint a, LatticePoint b) {
  return primitive({b.y - a.y, -(b.x - a.x)});
}
}  // namespace detail

inline Cone2 dual_cone(const NewtonPolygon& np, LatticePoint nu) {
  const PointLocation loc = locate(np, nu);
  if (loc.where == Location::Outside)
    throw input_error("not_lattice_point", "point is not in the Newton polygon");
  const auto& v = np.vertices;
  if (v.size() == 1) return {Cone2::Kind::Plane, {}};
  if (v.size() == 2) {
    const LatticePoint dir = detail::primitive({v[1].x - v[0].x, v[1].y - v[0].y});
    const LatticePoint perp{-dir.y, dir.x};
    if (loc.where == Location::Edge) return {Cone2::Kind::Line, {perp, {-perp.x, -perp.y}}};
    // Half-plane {s : <s, v_other - nu> <= 0}; boundary rays listed CCW.
    if (nu == v[0]) return {Cone2::Kind::HalfPlane, {{-perp.x, -perp.y}, perp}};
    return {Cone2::Kind::HalfPlane, {perp, {-perp.x, -perp.y}}};
  }
  const std::size_t n = v.size();
  switch (loc.where) {
    case Location::Interior:
      return {Cone2::Kind::Zero, {}};
    case Location::Edge:
      return {Cone2::Kind::Ray, {detail::outward_normal(v[loc.index], v[(loc.index + 1) % n])}};
    case Location::Vertex: {
      const std::size_t i = loc.index;
      const LatticePoint in = detail::outward_normal(v[(i + n - 1) % n], v[i]);
      const LatticePoint out = detail::outward_normal(v[i], v[(i + 1) % n]);
      return {Cone2::Kind::Sector, {in, out}};
    }
    default:
      break;
  }
  return {};
}

// Angle subtended by a cone, in radians.
inline double cone_angle(const Cone2& c) {
  switch (c.kind) {
    case Cone2::Kind::Zero:
    case Cone2::Kind::Ray:
      return 0.0;
    case Cone2::Kind::Line:
      return 0.0;
    case Cone2::Kind::HalfPlane:
      return std::numbers::pi;
    case Cone2::Kind::Plane:
      return 2.0 * std::numbers::pi;
    case Cone2::Kind::Sector: {
      const auto& a = c.generators[0];
      const auto& b = c.generators[1];
      double ang = std::atan2(b.y, b.x) - std::atan2(a.y, a.x);
      while (ang <= 0.0) ang += 2.0 * std::numbers::pi;
      return ang;
    }
  }
  return 0.0;
}

// Where a lifted boundary branch goes as it runs to infinity along a cone edge.
struct EndpointClass {
  enum class Kind { Origin, PPoint, QPoint, Infinity };
  static constexpr unsigned kZInf = 1u;
  static constexpr unsigned kWInf = 2u;

  Kind kind = Kind::Infinity;
  unsigned flavors = 0;        // subset of {kZInf, kWInf} for Infinity
  LatticePoint direction;      // the cone edge ray this end escapes along
  Complex anchor{};            // z0 for PPoint, w0 for QPoint once anchored
  bool anchored = false;
};

inline const char* to_string(EndpointClass::Kind k) {
  switch (k) {
    case EndpointClass::Kind::Origin: return "O";
    case EndpointClass::Kind::PPoint: return "p";
    case EndpointClass::Kind::QPoint: return "q";
    case EndpointClass::Kind::Infinity: return "inf";
  }
  return "?";
}

inline EndpointClass classify_direction(LatticePoint d) {
  EndpointClass e;
  e.direction = d;
  if (d.x == 0 && d.y == -1) {
    e.kind = EndpointClass::Kind::PPoint;
  } else if (d.x == -1 && d.y == 0) {
    e.kind = EndpointClass::Kind::QPoint;
  } else if (d.x < 0 && d.y < 0) {
    e.kind = EndpointClass::Kind::Origin;
  } else {
    e.kind = EndpointClass::Kind::Infinity;
    if (d.x > 0) e.flavors |= EndpointClass::kZInf;
    if (d.y > 0) e.flavors |= EndpointClass::kWInf;
  }
  return e;
}

// One end per cone edge ray.  A ray cone is a sector with coincident edges,
// so its component has two parallel ends in the same direction.
inline std::vector<EndpointClass> classify_ends(const Cone2& cone) {
  std::vector<EndpointClass> out;
  switch (cone.kind) {
    case Cone2::Kind::Zero:
    case Cone2::Kind::Plane:
      break;
    case Cone2::Kind::Ray:
      out.push_back(classify_direction(cone.generators[0]));
      out.push_back(classify_direction(cone.generators[0]));
      break;
    default:
      for (const auto& g : cone.generators) out.push_back(classify_direction(g));
      break;
  }
  return out;
}

}  // namespace amoeba
