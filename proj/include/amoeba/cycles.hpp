#pragma once

// Dual 1-cycles of complement components.  The boundary of a component is
// lifted to the curve at its (single) argument pair, the lift's ends are
// classified from the recession cone, and the lift is closed up with segments
// on the coordinate axes z = 0 / w = 0 according to the end signature.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "amoeba/amoeba.hpp"
#include "amoeba/error.hpp"
#include "amoeba/harnack.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/poly.hpp"
#include "amoeba/roots.hpp"

namespace amoeba {

struct LiftedPoint {
  double x = 0.0, y = 0.0;
  Complex z{}, w{};
  double deviation = 0.0;  // torus distance of (arg z, arg w) from the mean
};

struct BoundaryLift {
  TorusPoint angle;  // circular mean (phi, psi)
  std::vector<LiftedPoint> samples;
  double max_deviation = 0.0;
  bool multi_valued = false;  // deviation above 0.1 rad: not a single lift angle
};

inline BoundaryLift lift_boundary(const LaurentPoly2& p,
                                  const std::vector<std::pair<double, double>>& polyline,
                                  double lift_tol = 1e-4) {
  BoundaryLift out;
  std::vector<TorusPoint> args;
  for (auto [x, y] : polyline) {
    const Lift l = lift_point(p, x, y);
    if (!(l.gap <= lift_tol))
      throw numerical_error("lift_failure", "no fiber point within tolerance of a boundary point");
    out.samples.push_back({x, y, l.z, l.w, 0.0});
    args.push_back({l.arg_z, l.arg_w});
  }
  if (args.empty()) throw numerical_error("lift_failure", "empty boundary polyline");
  out.angle = circular_mean(args);
  for (std::size_t i = 0; i < args.size(); ++i) {
    out.samples[i].deviation = torus_distance(args[i], out.angle);
    out.max_deviation = std::max(out.max_deviation, out.samples[i].deviation);
  }
  out.multi_valued = out.max_deviation > 0.1;
  return out;
}

// Snaps a measured lift angle onto Theta + (arg b, arg c) when it is within
// `tol`; otherwise returns it unchanged.
inline TorusPoint snap_to_theta(TorusPoint a, const RealnessTransform& rt, double tol = 0.05) {
  if (!rt.found) return a;
  for (const auto& t : kTheta) {
    const TorusPoint s{wrap_angle(t.arg_z + rt.arg_b), wrap_angle(t.arg_w + rt.arg_c)};
    if (torus_distance(s, a) < tol) return s;
  }
  return a;
}

// How far along the end's direction to go so that the coordinates driving
// the end reach log-modulus far_radius.
inline double far_distance(const ComponentInfo& c, const EndpointClass& e, double far_radius) {
  const double n = std::hypot(e.direction.x, e.direction.y);
  const double ux = e.direction.x / n, uy = e.direction.y / n;
  double t = 0.0;
  auto need = [&](double seed, double u, double target) {
    if (u != 0.0) t = std::max(t, (target - seed) / u);
  };
  switch (e.kind) {
    case EndpointClass::Kind::PPoint: need(c.seed_y, uy, -far_radius); break;
    case EndpointClass::Kind::QPoint: need(c.seed_x, ux, -far_radius); break;
    case EndpointClass::Kind::Origin:
      need(c.seed_x, ux, -far_radius);
      need(c.seed_y, uy, -far_radius);
      break;
    case EndpointClass::Kind::Infinity:
      if (e.flavors & EndpointClass::kZInf) need(c.seed_x, ux, far_radius);
      if (e.flavors & EndpointClass::kWInf) need(c.seed_y, uy, far_radius);
      break;
  }
  return std::max(t, 1.0);
}

// Lifted curve point beside end `i`, far out along its direction.
inline Lift far_lift(const LaurentPoly2& p, const ComponentInfo& c, std::size_t i,
                     const EndpointClass& e, double far_radius, double pos_tol = 1e-10) {
  const double t = far_distance(c, e, far_radius);
  auto q = edge_boundary_point(p, c, i, t, pos_tol);
  if (!q) throw numerical_error("no_far_boundary", "could not locate the boundary far along a cone edge");
  return lift_point(p, q->first, q->second);
}

// Fixes the finite endpoints: p on w = 0 among the roots of the bottom edge
// polynomial with arg = phi, q on z = 0 among the roots of the left edge
// polynomial with arg = psi.  Several candidates are disambiguated by the
// lifted boundary far out along the end.
inline std::vector<EndpointClass> anchor_points(const LaurentPoly2& p, const ComponentInfo& c,
                                                TorusPoint angle, double far_radius = 8.0) {
  std::vector<EndpointClass> ends = classify_ends(c.cone);
  for (std::size_t i = 0; i < ends.size(); ++i) {
    auto& e = ends[i];
    const bool is_p = e.kind == EndpointClass::Kind::PPoint;
    if (!is_p && e.kind != EndpointClass::Kind::QPoint) continue;
    const UniPoly edge = is_p ? bottom_edge(p) : left_edge(p);
    const double target = is_p ? angle.arg_z : angle.arg_w;
    std::vector<Complex> cands;
    if (edge.degree() >= 1)
      for (const auto& r : find_roots(edge).roots)
        if (r != Complex{} && std::abs(wrap_angle(std::arg(r) - target)) < 0.05) cands.push_back(r);
    if (cands.empty())
      throw numerical_error("no_candidate", std::string("no root on the required ray for a ") +
                                                (is_p ? "p" : "q") + "-point");
    Complex pick = cands.front();
    if (cands.size() > 1) {
      const Lift l = far_lift(p, c, i, e, far_radius);
      const Complex probe = is_p ? l.z : l.w;
      for (const auto& r : cands)
        if (std::abs(r - probe) < std::abs(pick - probe)) pick = r;
    }
    e.anchor = pick;
    e.anchored = true;
  }
  return ends;
}

// A point of the compactified axes: O, a point of {w = 0} or {z = 0}, or infinity.
struct CycleNode {
  enum class Kind { Origin, OnZAxis, OnWAxis, Infinity };
  Kind kind = Kind::Origin;
  Complex value{};  // z for OnZAxis (point (z, 0)), w for OnWAxis (point (0, w))

  bool operator==(const CycleNode& o) const {
    return kind == o.kind && (kind == Kind::Origin || kind == Kind::Infinity || value == o.value);
  }
};

struct Segment {
  char axis = 'z';  // 'z': on the ray {t e^(i phi)} x {0}; 'w': on {0} x {t e^(i psi)}
  CycleNode a, b;
};

struct CycleSpec {
  LatticePoint nu;
  TorusPoint angle;           // lift angle used for the construction
  TorusPoint measured_angle;  // circular mean before snapping
  std::vector<EndpointClass> ends;
  std::string row;  // "bounded", "U1^0", ...
  std::vector<Segment> segments;
};

inline CycleNode node_of(const EndpointClass& e) {
  switch (e.kind) {
    case EndpointClass::Kind::Origin: return {CycleNode::Kind::Origin, {}};
    case EndpointClass::Kind::PPoint: return {CycleNode::Kind::OnZAxis, e.anchor};
    case EndpointClass::Kind::QPoint: return {CycleNode::Kind::OnWAxis, e.anchor};
    case EndpointClass::Kind::Infinity: return {CycleNode::Kind::Infinity, {}};
  }
  return {};
}

// Selects the closing construction from the multiset of ends.
inline CycleSpec build_sigma(const ComponentInfo& c, const std::vector<EndpointClass>& ends,
                             TorusPoint angle) {
  using K = EndpointClass::Kind;
  CycleSpec s;
  s.nu = c.ord;
  s.angle = angle;
  s.measured_angle = angle;
  s.ends = ends;
  const CycleNode O{CycleNode::Kind::Origin, {}};
  const CycleNode INF{CycleNode::Kind::Infinity, {}};
  if (ends.empty()) {
    s.row = "bounded";
    return s;
  }
  if (ends.size() != 2) throw numerical_error("unclassifiable_ends", "expected two ends");
  EndpointClass e1 = ends[0], e2 = ends[1];
  // Canonical order: Origin < P < Q < Infinity.
  if (static_cast<int>(e2.kind) < static_cast<int>(e1.kind)) std::swap(e1, e2);
  const auto k1 = e1.kind, k2 = e2.kind;
  for (const auto* e : {&e1, &e2})
    if ((e->kind == K::PPoint || e->kind == K::QPoint) && !e->anchored)
      throw input_error("unanchored", "finite ends must be anchored before building a cycle");
  auto seg = [](char axis, CycleNode a, CycleNode b) { return Segment{axis, a, b}; };

  if (k1 == K::PPoint && k2 == K::QPoint) {
    s.row = "U2^0";
    s.segments = {seg('z', O, node_of(e1)), seg('w', O, node_of(e2))};
  } else if (k1 == K::PPoint && k2 == K::PPoint) {
    s.row = "U1^0";
    s.segments = {seg('z', node_of(e1), node_of(e2))};
  } else if (k1 == K::QPoint && k2 == K::QPoint) {
    s.row = "U1^0";
    s.segments = {seg('w', node_of(e1), node_of(e2))};
  } else if (k1 == K::Origin && k2 == K::PPoint) {
    s.row = "U3^1";
    s.segments = {seg('z', O, node_of(e2))};
  } else if (k1 == K::Origin && k2 == K::QPoint) {
    s.row = "U3^1";
    s.segments = {seg('w', O, node_of(e2))};
  } else if (k1 == K::PPoint && k2 == K::Infinity) {
    if (e2.flavors & EndpointClass::kZInf) {
      s.row = "U1^1";
      s.segments = {seg('z', node_of(e1), INF)};
    } else {
      s.row = "U2^1";
      s.segments = {seg('z', O, node_of(e1)), seg('w', O, INF)};
    }
  } else if (k1 == K::QPoint && k2 == K::Infinity) {
    if (e2.flavors & EndpointClass::kWInf) {
      s.row = "U1^1";
      s.segments = {seg('w', node_of(e1), INF)};
    } else {
      s.row = "U2^1";
      s.segments = {seg('w', O, node_of(e1)), seg('z', O, INF)};
    }
  } else if (k1 == K::Origin && k2 == K::Infinity) {
    s.row = "U3^2";
    s.segments = {(e2.flavors & EndpointClass::kZInf) ? seg('z', O, INF) : seg('w', O, INF)};
  } else if (k1 == K::Origin && k2 == K::Origin) {
    s.row = "U4^2";
  } else if (k1 == K::Infinity && k2 == K::Infinity) {
    if (e1.flavors & e2.flavors) {
      s.row = "U1^2";
    } else {
      s.row = "U2^2";
      s.segments = {seg('z', O, INF), seg('w', O, INF)};
    }
  } else {
    throw numerical_error("unclassifiable_ends", "end signature matches no construction");
  }
  return s;
}

// Every node of the graph formed by the lift's ends and the closing segments
// has even degree, i.e. sigma is a cycle.
inline bool closes_up(const CycleSpec& s) {
  std::vector<std::pair<CycleNode, int>> deg;
  auto bump = [&](const CycleNode& n) {
    for (auto& [m, d] : deg)
      if (m == n) {
        ++d;
        return;
      }
    deg.push_back({n, 1});
  };
  for (const auto& e : s.ends) bump(node_of(e));
  for (const auto& g : s.segments) {
    bump(g.a);
    bump(g.b);
  }
  return std::all_of(deg.begin(), deg.end(), [](const auto& nd) { return nd.second % 2 == 0; });
}

// Segment endpoints on the axes lie on the rays of the lift angle.
inline double ray_deviation(const CycleSpec& s) {
  double worst = 0.0;
  for (const auto& g : s.segments)
    for (const CycleNode* n : {&g.a, &g.b}) {
      if (n->kind == CycleNode::Kind::OnZAxis)
        worst = std::max(worst, std::abs(wrap_angle(std::arg(n->value) - s.angle.arg_z)));
      if (n->kind == CycleNode::Kind::OnWAxis)
        worst = std::max(worst, std::abs(wrap_angle(std::arg(n->value) - s.angle.arg_w)));
    }
  return worst;
}

// Full construction for one component: trace, lift, anchor, build.
struct CycleOptions {
  int boundary_points = 64;
  double pos_tol = 1e-9;
};

inline CycleSpec construct_cycle(const LaurentPoly2& p, const ComponentInfo& c,
                                 const RealnessTransform& rt, const CycleOptions& o = {}) {
  const BoundaryLift lift = lift_boundary(p, trace_boundary(p, c, o.boundary_points, o.pos_tol));
  if (lift.multi_valued)
    throw numerical_error("multi_valued_lift", "boundary lift is not a single argument pair");
  const TorusPoint angle = snap_to_theta(lift.angle, rt);
  CycleSpec s = build_sigma(c, anchor_points(p, c, angle), angle);
  s.measured_angle = lift.angle;
  return s;
}

// ---------------------------------------------------------------------------
// Linking

using LinkMatrix = std::vector<std::vector<int>>;

// Entry (mu, nu) is 1 when the base point of Gamma_nu lies in E_mu: the
// chain bounded by sigma_mu meets Gamma_nu exactly then, in one point.  All
// signs are reported as +1; only |link| is verified.
inline LinkMatrix linking_matrix(const LaurentPoly2& p, const std::vector<ComponentInfo>& comps,
                                 int n_theta, double band) {
  const std::size_t n = comps.size();
  LinkMatrix m(n, std::vector<int>(n, 0));
  for (std::size_t nu = 0; nu < n; ++nu) {
    const MembershipResult r = membership(p, comps[nu].seed_x, comps[nu].seed_y, n_theta, band);
    if (r.state != CellState::Complement)
      throw numerical_error("membership_uncertain", "a toric cycle base point is not in the complement");
    for (std::size_t mu = 0; mu < n; ++mu)
      if (r.ord == comps[mu].ord) m[mu][nu] = 1;
  }
  return m;
}

inline bool is_identity(const LinkMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (std::abs(m[i][j]) != (i == j ? 1 : 0)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Closure check

struct EndCheck {
  EndpointClass end;
  Complex z{}, w{};      // lifted curve point far along the end
  double distance = 0.0; // distance to the predicted terminal point
};

struct ClosureReport {
  std::vector<EndCheck> ends;
  double worst = 0.0;
  bool passed = true;
};

// Follows each end to log-radius far_radius and measures how close the
// lifted curve comes to its predicted limit: the anchor point for p/q ends,
// the origin, or infinity (measured as 1/|coordinate| of the escaping ones).
inline ClosureReport verify_closure(const LaurentPoly2& p, const ComponentInfo& c,
                                    const CycleSpec& s, double far_radius = 12.0,
                                    double tol = 1e-3) {
  ClosureReport rep;
  for (std::size_t i = 0; i < s.ends.size(); ++i) {
    const EndpointClass& e = s.ends[i];
    const Lift l = far_lift(p, c, i, e, far_radius);
    EndCheck ck{e, l.z, l.w, 0.0};
    switch (e.kind) {
      case EndpointClass::Kind::PPoint: ck.distance = std::abs(l.z - e.anchor) + std::abs(l.w); break;
      case EndpointClass::Kind::QPoint: ck.distance = std::abs(l.z) + std::abs(l.w - e.anchor); break;
      case EndpointClass::Kind::Origin: ck.distance = std::abs(l.z) + std::abs(l.w); break;
      case EndpointClass::Kind::Infinity: {
        double m = std::numeric_limits<double>::infinity();
        if (e.flavors & EndpointClass::kZInf) m = std::min(m, std::abs(l.z));
        if (e.flavors & EndpointClass::kWInf) m = std::min(m, std::abs(l.w));
        ck.distance = 1.0 / m;
        break;
      }
    }
    rep.worst = std::max(rep.worst, ck.distance);
    rep.ends.push_back(ck);
  }
  rep.passed = rep.worst < tol;
  return rep;
}

}  // namespace amoeba
