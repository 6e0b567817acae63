#pragma once

// JSON serialization of results.  Document layout:
//   {"polynomial": str,
//    "newton": {"vertices": [[a1,a2]...], "lattice_points": [...], "area2": int},
//    "components": [{"ord": [a1,a2], "seed": [x,y], "bounded": bool,
//                    "theta": [phi,psi] | null, "cycle": {...} | null}],
//    "harnack": {...}, "link_matrix": [[int]]}
// Sections are filled by whichever subcommand produced them.

#include <cmath>
#include <string>
#include <vector>

#include "json.hpp"

#include "amoeba/amoeba.hpp"
#include "amoeba/cycles.hpp"
#include "amoeba/error.hpp"
#include "amoeba/harnack.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/poly.hpp"

namespace amoeba {

using Json = nlohmann::ordered_json;

inline Json to_json(LatticePoint v) { return Json::array({v.x, v.y}); }

inline Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

inline Json to_json(TorusPoint t) { return Json::array({t.arg_z, t.arg_w}); }

inline Json to_json(const NewtonPolygon& np) {
  Json v = Json::array(), lp = Json::array();
  for (const auto& q : np.vertices) v.push_back(to_json(q));
  for (const auto& q : lattice_points(np)) lp.push_back(to_json(q));
  return {{"vertices", v}, {"lattice_points", lp}, {"area2", np.area2}};
}

inline Json to_json(const Cone2& c) {
  Json g = Json::array();
  for (const auto& q : c.generators) g.push_back(to_json(q));
  return {{"kind", to_string(c.kind)}, {"generators", g}};
}

inline Json to_json(const EndpointClass& e) {
  Json f = Json::array();
  if (e.flavors & EndpointClass::kZInf) f.push_back("z");
  if (e.flavors & EndpointClass::kWInf) f.push_back("w");
  Json j = {{"kind", to_string(e.kind)}, {"direction", to_json(e.direction)}, {"flavors", f}};
  j["anchor"] = e.anchored ? to_json(e.anchor) : Json(nullptr);
  return j;
}

inline Json to_json(const CycleNode& n) {
  switch (n.kind) {
    case CycleNode::Kind::Origin: return {{"at", "O"}};
    case CycleNode::Kind::Infinity: return {{"at", "inf"}};
    case CycleNode::Kind::OnZAxis: return {{"at", "w=0"}, {"z", to_json(n.value)}};
    case CycleNode::Kind::OnWAxis: return {{"at", "z=0"}, {"w", to_json(n.value)}};
  }
  return nullptr;
}

inline Json to_json(const CycleSpec& s) {
  Json ends = Json::array(), segs = Json::array();
  for (const auto& e : s.ends) ends.push_back(to_json(e));
  for (const auto& g : s.segments)
    segs.push_back({{"axis", std::string(1, g.axis)}, {"from", to_json(g.a)}, {"to", to_json(g.b)}});
  return {{"nu", to_json(s.nu)},
          {"row", s.row},
          {"angle", to_json(s.angle)},
          {"measured_angle", to_json(s.measured_angle)},
          {"ends", ends},
          {"segments", segs},
          {"closes", closes_up(s)}};
}

inline Json to_json(const ClosureReport& c) {
  Json ends = Json::array();
  for (const auto& e : c.ends)
    ends.push_back({{"kind", to_string(e.end.kind)},
                    {"z", to_json(e.z)},
                    {"w", to_json(e.w)},
                    {"distance", e.distance}});
  return {{"ends", ends}, {"worst", c.worst}, {"passed", c.passed}};
}

inline Json to_json(const ComponentInfo& c) {
  return {{"ord", to_json(c.ord)},
          {"seed", Json::array({c.seed_x, c.seed_y})},
          {"bounded", c.bounded},
          {"cells", c.cells},
          {"touches_window", c.touches_window},
          {"cone", to_json(c.cone)},
          {"theta", nullptr},
          {"cycle", nullptr}};
}

inline Json to_json(const RealnessTransform& r) {
  return {{"found", r.found},
          {"arg_a", r.arg_a + 0.0},
          {"arg_b", r.arg_b + 0.0},
          {"arg_c", r.arg_c + 0.0},
          {"residual", r.residual}};
}

inline Json to_json(const HarnackReport& h) {
  return {{"polygon_area2", h.polygon_area2},
          {"amoeba_area", h.area.estimate},
          {"half_width", h.area.half_width},
          {"truncated", h.area.truncated},
          {"ratio", h.ratio},
          {"realness", to_json(h.realness)},
          {"verdict", h.verdict}};
}

inline Json to_json(const TwoToOneStats& s) {
  return {{"samples", s.samples},
          {"exactly_two", s.exactly_two},
          {"fraction_two", s.fraction_two},
          {"max_count", s.max_count},
          {"non_isolated", s.non_isolated}};
}

inline Json to_json(const LinkMatrix& m) {
  Json j = Json::array();
  for (const auto& row : m) j.push_back(row);
  return j;
}

inline Json to_json(const GridWindow& w) {
  return {{"x", Json::array({w.x0, w.x1})}, {"y", Json::array({w.y0, w.y1})}, {"nx", w.nx}, {"ny", w.ny}};
}

inline const char* to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::Input: return "input";
    case ErrorClass::Numerical: return "numerical";
    case ErrorClass::Verification: return "verification";
  }
  return "unknown";
}

inline Json error_json(const Error& e) {
  Json j = {{"error", {{"class", to_string(e.error_class())}, {"code", e.code()}, {"message", e.what()}}}};
  if (const auto* s = dynamic_cast<const SyntaxError*>(&e)) j["error"]["offset"] = s->offset();
  return j;
}

}  // namespace amoeba
