#pragma once

// End-to-end verification checks shared by the acceptance test binary and
// `amoeba selftest`.  Each check returns a pass flag and a one-line detail;
// the reduced scale lowers raster sizes and sample counts.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "amoeba/amoeba.hpp"
#include "amoeba/cycles.hpp"
#include "amoeba/error.hpp"
#include "amoeba/harnack.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/poly.hpp"
#include "amoeba/roots.hpp"
#include "amoeba/ronkin.hpp"

namespace amoeba::checks {

inline constexpr const char* kCubic = "z^2*w - 4*z*w + z*w^2 + 1";
inline constexpr const char* kLine = "1 + z + w";
inline constexpr const char* kCross = "1 + z + w + z*w";

struct Scale {
  bool reduced = false;
};

struct Result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

inline std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline GridWindow square(double h, int n) {
  GridWindow w;
  w.x0 = w.y0 = -h;
  w.x1 = w.y1 = h;
  w.nx = w.ny = n;
  return w;
}

// Components from a membership raster at the default band.
inline std::vector<ComponentInfo> components_of(const LaurentPoly2& p, const GridWindow& w,
                                                int n_theta = 256) {
  return find_components(p, rasterize(p, w, n_theta, default_band(n_theta)));
}

inline GridWindow census_window(const Scale& s) { return square(7.0, s.reduced ? 160 : 280); }

inline std::set<LatticePoint> ords(const std::vector<ComponentInfo>& cs) {
  std::set<LatticePoint> out;
  for (const auto& c : cs) out.insert(c.ord);
  return out;
}

inline const ComponentInfo* by_ord(const std::vector<ComponentInfo>& cs, LatticePoint ord) {
  for (const auto& c : cs)
    if (c.ord == ord) return &c;
  return nullptr;
}

// 1: area of the cubic amoeba against pi^2 * area(Newton polygon).
inline Result harnack_area(const Scale& s) {
  Result r{1, "harnack area, cubic z^2w - 4zw + zw^2 + 1", false, ""};
  const auto t0 = std::chrono::steady_clock::now();
  const LaurentPoly2 p = parse_poly(kCubic);
  const GridWindow w = square(7.0, s.reduced ? 300 : 800);
  const HarnackReport h = harnack_area_test(p, w, {s.reduced ? 256 : 512, kAreaBand});
  const double secs = seconds_since(t0);
  const double expected = std::numbers::pi * std::numbers::pi * 1.5;
  r.passed = std::abs(h.area.estimate / expected - 1.0) <= 0.05 && secs <= 300.0;
  r.detail = fmt("area %.4f vs %.4f (ratio %.4f, half-width %.3f), %.1f s", h.area.estimate, expected,
                 h.ratio, h.area.half_width, secs);
  return r;
}

// 2: component census of the cubic.
inline Result component_census(const Scale& s) {
  Result r{2, "component census, cubic z^2w - 4zw + zw^2 + 1", false, ""};
  const LaurentPoly2 p = parse_poly(kCubic);
  const auto cs = components_of(p, census_window(s));  // throws if ord is not injective
  const std::set<LatticePoint> want{{0, 0}, {1, 1}, {1, 2}, {2, 1}};
  bool bounded_ok = true;
  for (const auto& c : cs) bounded_ok &= c.bounded == (c.ord == LatticePoint{1, 1});
  r.passed = cs.size() == 4 && ords(cs) == want && bounded_ok;
  std::string list;
  for (const auto& c : cs)
    list += fmt(" (%d,%d)%s", c.ord.x, c.ord.y, c.bounded ? "b" : "");
  r.detail = fmt("%zu components:", cs.size()) + list + ", ord injective";
  return r;
}

// 3: the line 1 + z + w.
inline Result line(const Scale& s) {
  Result r{3, "line 1+z+w: area, orders, U2^0 cycle", false, ""};
  const LaurentPoly2 p = parse_poly(kLine);
  const HarnackReport h =
      harnack_area_test(p, square(7.0, s.reduced ? 300 : 800), {s.reduced ? 256 : 512, kAreaBand});
  const auto cs = components_of(p, census_window(s));
  const std::set<LatticePoint> want{{0, 0}, {1, 0}, {0, 1}};
  const ComponentInfo* e00 = by_ord(cs, {0, 0});
  bool cycle_ok = false;
  double pz = NAN, qw = NAN, far = NAN;
  std::string row = "-";
  if (e00) {
    const CycleSpec c = construct_cycle(p, *e00, realness_transform(p, 1e-9));
    row = c.row;
    for (const auto& e : c.ends) {
      if (e.kind == EndpointClass::Kind::PPoint) pz = std::abs(e.anchor - Complex(-1.0, 0.0));
      if (e.kind == EndpointClass::Kind::QPoint) qw = std::abs(e.anchor - Complex(-1.0, 0.0));
    }
    far = verify_closure(p, *e00, c).worst;
    cycle_ok = c.row == "U2^0" && pz < 1e-3 && qw < 1e-3 && far < 1e-3;
  }
  r.passed = std::abs(h.ratio - 1.0) <= 0.05 && ords(cs) == want && cs.size() == 3 && cycle_ok;
  r.detail = fmt("ratio %.4f; %zu components; E(0,0) row %s, |p-(-1,0)| %.1e, |q-(0,-1)| %.1e, far lift %.1e",
                 h.ratio, cs.size(), row.c_str(), pz, qw, far);
  return r;
}

// Lift-angle centers per component, keyed by order.
struct Centers {
  std::vector<ComponentInfo> comps;
  ThetaReport theta;
};

inline Centers centers(const LaurentPoly2& p, const GridWindow& w, int boundary_points) {
  Centers c;
  c.comps = components_of(p, w);
  c.theta = theta_points(p, c.comps, boundary_points, realness_transform(p, 1e-9));
  return c;
}

// 4: lift angles of the cubic exhaust Theta.
inline Result theta_exhaustion(const Scale& s) {
  Result r{4, "lift angles exhaust Theta, cubic z^2w - 4zw + zw^2 + 1", false, ""};
  const Centers c = centers(parse_poly(kCubic), census_window(s), s.reduced ? 16 : 48);
  std::set<int> hit;
  double worst_d = 0.0, worst_r = 0.0;
  for (const auto& e : c.theta.entries) {
    hit.insert(e.nearest_index);
    worst_d = std::max(worst_d, e.distance);
    worst_r = std::max(worst_r, e.radius);
  }
  r.passed = c.theta.entries.size() == 4 && hit.size() == 4 && worst_d < 0.05 && worst_r < 0.05;
  r.detail = fmt("%zu centers on %zu Theta points, max distance %.2e, max radius %.2e",
                 c.theta.entries.size(), hit.size(), worst_d, worst_r);
  return r;
}

// 5: covariance under (z, w) -> (b z, c w).  The transformed curve is the
// original scaled by (1/b, 1/c), so the original's data is the transformed
// data translated by (log|b|, log|c|) and (arg b, arg c).
inline Result covariance(const Scale& s) {
  Result r{5, "torus-action covariance, b = 2e^{i pi/3}, c = e^{-i pi/5}", false, ""};
  const double pi = std::numbers::pi;
  const Complex b = std::polar(2.0, pi / 3), c = std::polar(1.0, -pi / 5);
  const LaurentPoly2 p = parse_poly(kCubic);
  const LaurentPoly2 q = torus_transform(p, 1.0, b, c);
  const GridWindow wp = census_window(s);
  GridWindow wq = wp;
  wq.x0 -= std::log(2.0);
  wq.x1 -= std::log(2.0);
  const int pts = s.reduced ? 16 : 48;
  const Centers cp = centers(p, wp, pts), cq = centers(q, wq, pts);
  double worst = 0.0;
  bool matched = cp.theta.entries.size() == cq.theta.entries.size() && !cp.theta.entries.empty();
  for (const auto& ep : cp.theta.entries) {
    const ThetaEntry* eq = nullptr;
    for (const auto& e : cq.theta.entries)
      if (e.ord == ep.ord) eq = &e;
    if (!eq) {
      matched = false;
      continue;
    }
    const TorusPoint moved{eq->center.arg_z + pi / 3, eq->center.arg_w - pi / 5};
    worst = std::max(worst, torus_distance(moved, ep.center));
  }
  const int n = s.reduced ? 160 : 400;
  GridWindow rp = square(6.0, n), rq = rp;
  rq.x0 -= std::log(2.0);
  rq.x1 -= std::log(2.0);
  const AmoebaRaster ap = rasterize(p, rp, 256, default_band(256));
  const AmoebaRaster aq = rasterize(q, rq, 256, default_band(256));
  std::size_t agree = 0;
  for (std::size_t k = 0; k < ap.cells.size(); ++k)
    agree += ap.cells[k].state == aq.cells[k].state &&
             (ap.cells[k].state != CellState::Complement || ap.cells[k].ord == aq.cells[k].ord);
  const double frac = static_cast<double>(agree) / ap.cells.size();
  r.passed = matched && worst < 0.05 && frac >= 0.99;
  r.detail = fmt("center shift error %.2e over %zu components, raster agreement %.4f", worst,
                 cp.theta.entries.size(), frac);
  return r;
}

// 6: rounded Ronkin gradient against root-counting orders.
inline Result order_double_check(const Scale& s) {
  Result r{6, "Ronkin gradient vs root-counting order", false, ""};
  const int per_poly = 20, grid = s.reduced ? 256 : 512;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  int total = 0, match = 0;
  for (const char* text : {kCubic, kLine, kCross}) {
    const LaurentPoly2 p = parse_poly(text);
    for (int got = 0, tries = 0; got < per_poly && tries < 10000; ++tries) {
      const double x = u(rng), y = u(rng);
      const MembershipResult m = membership(p, x, y, 256, default_band(256));
      if (m.state != CellState::Complement) continue;
      ++got;
      ++total;
      const Gradient g = ronkin_gradient(p, x, y, grid);
      if (std::lround(g.gx) == m.ord.x && std::lround(g.gy) == m.ord.y) ++match;
    }
  }
  r.passed = total == 3 * per_poly && match == total;
  r.detail = fmt("%d/%d integer matches (grid %d)", match, total, grid);
  return r;
}

// 7: Ronkin function of a monomial and Jensen's formula for z - 1.
inline Result ronkin_exactness(const Scale& s) {
  Result r{7, "Ronkin exactness: monomial and Jensen", false, ""};
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_int_distribution<int> e(-3, 3);
  double mono = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Complex c(u(rng), u(rng));
    const int a1 = e(rng), a2 = e(rng);
    const double x = u(rng), y = u(rng);
    const LaurentPoly2 p({Term{{a1, a2}, c}});
    const double n = ronkin_value(p, x, y, 64).value;
    mono = std::max(mono, std::abs(n - (std::log(std::abs(c)) + a1 * x + a2 * y)));
  }
  const LaurentPoly2 zm1 = parse_poly("z - 1");
  double jensen = 0.0;
  const int grid = 1024;
  for (double x : {-3.0, -1.5, -0.5, 0.5, 1.0, 2.5}) {
    const double n = ronkin_value(zm1, x, 0.0, grid).value;
    jensen = std::max(jensen, std::abs(n - std::max(x, 0.0)));
  }
  (void)s;
  r.passed = mono < 1e-10 && jensen < 1e-6;
  r.detail = fmt("monomial error %.1e, Jensen error %.1e (grid %d)", mono, jensen, grid);
  return r;
}

// 8: interior amoeba points have exactly two torus preimages.
inline Result two_to_one(const Scale& s) {
  Result r{8, "two-to-one over the amoeba interior, cubic z^2w - 4zw + zw^2 + 1", false, ""};
  const LaurentPoly2 p = parse_poly(kCubic);
  const AmoebaRaster a = rasterize(p, square(7.0, s.reduced ? 200 : 400), 512, default_band(512));
  const TwoToOneStats st = two_to_one_stats(p, a, 200, 8, s.reduced ? 1024 : 2048);
  r.passed = st.samples == 200 && st.fraction_two >= 0.95 && st.max_count <= 2;
  r.detail = fmt("%d/%d samples with exactly 2 clusters, max %d", st.exactly_two, st.samples,
                 st.max_count);
  return r;
}

// 9: realness transform on rotations of a real polynomial and on a non-real one.
inline Result realness(const Scale& s) {
  Result r{9, "realness solver", false, ""};
  const double pi = std::numbers::pi;
  const double tol = 1e-9;
  const LaurentPoly2 p = parse_poly(kCubic);
  const RealnessTransform r0 = realness_transform(p, tol);
  const RealnessTransform r1 = realness_transform(torus_transform(p, Complex(0, 1), 1.0, 1.0), tol);
  const RealnessTransform r2 = realness_transform(
      torus_transform(p, std::polar(1.0, pi / 7), std::polar(1.0, pi / 3), std::polar(1.0, -pi / 5)),
      tol);
  const RealnessTransform r3 = realness_transform(parse_poly("1 + z + w + (0+1i)*z*w"), tol);
  const double zero = std::max({r0.residual, r1.residual, r2.residual});
  (void)s;
  r.passed = r0.found && r1.found && r2.found && zero <= 1e-12 && !r3.found && r3.residual >= 0.1;
  r.detail = fmt("residuals %.1e, %.1e, %.1e; 1+z+w+i*zw residual %.4f", r0.residual, r1.residual,
                 r2.residual, r3.residual);
  return r;
}

// Raises the verification error the CLI maps to exit code 3.
inline void require_identity(const LinkMatrix& m) {
  if (!is_identity(m)) throw verification_error("link_not_identity", "|link matrix| is not the identity");
}

// 10: linking matrix is the identity.
inline Result linking(const Scale& s) {
  Result r{10, "linking identity", false, ""};
  std::string detail;
  bool ok = true;
  for (auto [text, n] : {std::pair{kCubic, std::size_t{4}}, std::pair{kLine, std::size_t{3}}}) {
    const LaurentPoly2 p = parse_poly(text);
    const auto cs = components_of(p, census_window(s));
    const LinkMatrix m = linking_matrix(p, cs, 256, default_band(256));
    ok &= m.size() == n && is_identity(m);
    detail += fmt("%zux%zu %s; ", m.size(), m.size(), is_identity(m) ? "identity" : "NOT identity");
  }
  // A corrupted matrix must be reported as a verification failure.
  bool raised = false;
  try {
    require_identity({{0, 1}, {1, 0}});
  } catch (const Error& e) {
    raised = exit_code(e.error_class()) == 3;
  }
  r.passed = ok && raised;
  r.detail = detail + (raised ? "violation raises verification error" : "violation not raised");
  return r;
}

// 11: root finder on random degree-20 polynomials.
inline Result root_kernel(const Scale& s) {
  Result r{11, "root finder, random degree 20", false, ""};
  const int n_polys = s.reduced ? 200 : 2000;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rad(0.0, 1.0), ang(0.0, kTwoPi);
  double worst_res = 0.0, worst_rec = 0.0;
  std::vector<UniPoly> polys;
  for (int k = 0; k < n_polys; ++k) {
    UniPoly u;
    u.coeffs.resize(21);
    for (auto& c : u.coeffs) c = std::polar(rad(rng), ang(rng));
    polys.push_back(std::move(u));
  }
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<RootSet> sets(polys.size());
  parallel_for(polys.size(), [&](std::size_t k) { sets[k] = find_roots(polys[k]); });
  const double secs = seconds_since(t0);
  for (std::size_t k = 0; k < polys.size(); ++k) {
    worst_res = std::max(worst_res, sets[k].max_residual);
    // Expand prod (x - r_i) and compare with the monic coefficients.
    std::vector<Complex> m{1.0};
    for (const auto& root : sets[k].roots) {
      std::vector<Complex> next(m.size() + 1);
      for (std::size_t i = 0; i < m.size(); ++i) {
        next[i + 1] += m[i];
        next[i] -= root * m[i];
      }
      m = std::move(next);
    }
    const auto& c = polys[k].coeffs;
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) scale = std::max(scale, std::abs(c[i] / c.back()));
    for (std::size_t i = 0; i < c.size(); ++i) err = std::max(err, std::abs(m[i] - c[i] / c.back()));
    worst_rec = std::max(worst_rec, err / scale);
  }
  const double rate = n_polys / std::max(secs, 1e-9);
  r.passed = worst_res < 1e-10 && worst_rec < 1e-8;
  r.detail = fmt("max residual %.1e, max reconstruction error %.1e, %.0f fibers/s on %u threads (advisory)",
                 worst_res, worst_rec, rate, thread_count());
  return r;
}

// 12: every cycle closes up, and unbounded ends reach their predicted limits.
inline Result cycle_closure(const Scale& s) {
  Result r{12, "cycle closure", false, ""};
  bool ok = true;
  int cycles = 0, checked = 0;
  double worst = 0.0;
  for (const char* text : {kCubic, kLine}) {
    const LaurentPoly2 p = parse_poly(text);
    const auto cs = components_of(p, census_window(s));
    const RealnessTransform rt = realness_transform(p, 1e-9);
    for (const auto& c : cs) {
      const CycleSpec spec = construct_cycle(p, c, rt, {s.reduced ? 16 : 48, 1e-9});
      ++cycles;
      ok &= closes_up(spec) && ray_deviation(spec) < 1e-6;
      if (c.bounded) continue;
      const ClosureReport cl = verify_closure(p, c, spec, 12.0);
      ++checked;
      worst = std::max(worst, cl.worst);
      ok &= cl.passed;
    }
  }
  r.passed = ok && cycles == 7 && checked == 6;
  r.detail = fmt("%d cycles close up, %d unbounded closures, worst terminal distance %.1e", cycles,
                 checked, worst);
  return r;
}

using CheckFn = Result (*)(const Scale&);

inline const std::vector<CheckFn>& all() {
  static const std::vector<CheckFn> fns = {harnack_area,  component_census, line,
                                           theta_exhaustion, covariance,   order_double_check,
                                           ronkin_exactness, two_to_one,   realness,
                                           linking,       root_kernel,      cycle_closure};
  return fns;
}

// Runs one check, converting exceptions into failures.
inline Result run(CheckFn fn, const Scale& s, int id) {
  try {
    return fn(s);
  } catch (const std::exception& e) {
    return {id, "check " + std::to_string(id), false, std::string("exception: ") + e.what()};
  }
}

}  // namespace amoeba::checks
