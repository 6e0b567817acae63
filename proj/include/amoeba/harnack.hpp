#pragma once

// Harnack tests: a phase search making a P(bz, cw) real, the maximal-area
// check, fiber preimage counts, and lift angles of complement boundaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "amoeba/amoeba.hpp"
#include "amoeba/error.hpp"
#include "amoeba/fiber.hpp"
#include "amoeba/newton.hpp"
#include "amoeba/poly.hpp"

namespace amoeba {

namespace detail {
// Distance from a to the nearest multiple of pi.
inline double dist_to_pi_lattice(double a) {
  return std::abs(std::remainder(a, std::numbers::pi));
}
inline double mod_pi(double a) {
  double r = std::fmod(a, std::numbers::pi);
  if (r < 0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r -= std::numbers::pi;
  return r;
}
}  // namespace detail

struct RealnessTransform {
  bool found = false;
  double arg_a = 0.0, arg_b = 0.0, arg_c = 0.0;  // each in [0, pi)
  double residual = 0.0;  // max distance of a transformed coefficient phase from {0, pi}
};

// Solves arg a + a1 arg b + a2 arg c = -arg c_alpha (mod pi) for all terms.
// A reference term eliminates arg a; two independent exponent differences
// give a 2x2 integer system whose solutions modulo pi are enumerated over
// the |det| x |det| residue offsets; the best candidate is checked on all
// terms.  Collinear supports are solved along their line.
inline RealnessTransform realness_transform(const LaurentPoly2& p, double phase_tol) {
  const auto& ts = p.terms();
  const Term& ref = ts.front();
  const double ref_arg = std::arg(ref.coef);
  auto evaluate = [&](double pb, double pc) {
    RealnessTransform r;
    r.arg_b = detail::mod_pi(pb);
    r.arg_c = detail::mod_pi(pc);
    r.arg_a = detail::mod_pi(-(ref_arg + ref.exp.a1 * r.arg_b + ref.exp.a2 * r.arg_c));
    for (const auto& t : ts) {
      const double ph = std::arg(t.coef) + r.arg_a + t.exp.a1 * r.arg_b + t.exp.a2 * r.arg_c;
      r.residual = std::max(r.residual, detail::dist_to_pi_lattice(ph));
    }
    r.found = r.residual <= phase_tol;
    return r;
  };
  if (ts.size() == 1) return evaluate(0.0, 0.0);

  struct Diff {
    int d1, d2;
    double target;  // required <d, (arg b, arg c)> mod pi
  };
  std::vector<Diff> diffs;
  for (std::size_t i = 1; i < ts.size(); ++i)
    diffs.push_back({ts[i].exp.a1 - ref.exp.a1, ts[i].exp.a2 - ref.exp.a2,
                     -(std::arg(ts[i].coef) - ref_arg)});
  const Diff& first = diffs.front();
  const Diff* second = nullptr;
  for (const auto& d : diffs)
    if (static_cast<long>(first.d1) * d.d2 - static_cast<long>(first.d2) * d.d1 != 0) {
      second = &d;
      break;
    }

  RealnessTransform best;
  best.residual = std::numeric_limits<double>::infinity();
  constexpr double pi = std::numbers::pi;
  if (second) {
    const long det = static_cast<long>(first.d1) * second->d2 - static_cast<long>(first.d2) * second->d1;
    const long n = std::labs(det);
    for (long k1 = 0; k1 < n; ++k1) {
      for (long k2 = 0; k2 < n; ++k2) {
        const double r1 = first.target + pi * k1, r2 = second->target + pi * k2;
        const double pb = (second->d2 * r1 - first.d2 * r2) / det;
        const double pc = (-second->d1 * r1 + first.d1 * r2) / det;
        const RealnessTransform r = evaluate(pb, pc);
        if (r.residual < best.residual) best = r;
      }
    }
  } else {
    // Collinear: differences are multiples m of a primitive direction u.
    const int g = std::gcd(std::abs(first.d1), std::abs(first.d2));
    const int u1 = first.d1 / g, u2 = first.d2 / g;
    const double uu = static_cast<double>(u1) * u1 + static_cast<double>(u2) * u2;
    for (int k = 0; k < g; ++k) {
      const double s = (first.target + pi * k) / g;  // required <u, phi>
      const RealnessTransform r = evaluate(s * u1 / uu, s * u2 / uu);
      if (r.residual < best.residual) best = r;
    }
  }
  return best;
}

struct HarnackReport {
  std::int64_t polygon_area2 = 0;  // twice the Newton polygon area
  AreaEstimate area;
  double ratio = 0.0;
  RealnessTransform realness;
  bool verdict = false;
};

// Area runs use the floor of the default band: the band dilates the amoeba
// on both sides, and over the long tentacles of a line that alone is ~20%.
inline constexpr double kAreaBand = 1e-3;

struct RasterParams {
  int n_theta = 512;
  double band = kAreaBand;
};

inline HarnackReport harnack_area_test(const LaurentPoly2& p, const GridWindow& window,
                                       const RasterParams& params = {}, double phase_tol = 1e-9) {
  const NewtonPolygon np = newton_polygon(p);
  if (np.degenerate())
    throw input_error("degenerate_polygon", "Newton polygon has zero area");
  HarnackReport rep;
  rep.polygon_area2 = np.area2;
  const AmoebaRaster r = rasterize(p, window, params.n_theta, params.band);
  rep.area = amoeba_area(r);
  rep.ratio = rep.area.estimate / (std::numbers::pi * std::numbers::pi * 0.5 * np.area2);
  rep.realness = realness_transform(p, phase_tol);
  const double rel_hw = rep.area.estimate > 0 ? rep.area.half_width / rep.area.estimate : 1.0;
  rep.verdict = rep.ratio >= 1.0 - 3.0 * rel_hw && rep.realness.found;
  return rep;
}

// ---------------------------------------------------------------------------
// Preimage counting

struct TorusPoint {
  double arg_z = 0.0, arg_w = 0.0;
};

// Solutions of P = 0 on the torus |z| = e^x, |w| = e^y.  Each crossing of a
// sorted w-fiber log-modulus through y between neighbouring angles is
// bisected to high accuracy.  Returns false if the fiber is not isolated
// (P does not involve w, so the preimage would be a whole circle).
inline bool torus_preimages(const LaurentPoly2& p, double x, double y, int n_theta,
                            std::vector<TorusPoint>& out) {
  out.clear();
  if (p.w_span() == 0) return false;
  const int deg = p.w_span();
  auto sample = [&](double th, std::vector<Complex>& r) {
    if (!detail::try_fiber(p, Axis::W, std::polar(std::exp(x), th), r)) return false;
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    return true;
  };
  std::vector<std::vector<Complex>> rs(n_theta);
  std::vector<char> ok(n_theta);
  for (int j = 0; j < n_theta; ++j) ok[j] = sample(kTwoPi * j / n_theta, rs[j]);
  for (int j = 0; j < n_theta; ++j) {
    const int jn = (j + 1) % n_theta;
    if (!ok[j] || !ok[jn]) continue;
    for (int k = 0; k < deg; ++k) {
      const double g0 = log_modulus(rs[j][k]) - y, g1 = log_modulus(rs[jn][k]) - y;
      if ((g0 < 0) == (g1 < 0)) continue;
      double a = kTwoPi * j / n_theta, b = a + kTwoPi / n_theta;
      const bool neg_at_a = g0 < 0;
      std::vector<Complex> r;
      Complex root = rs[j][k];
      for (int it = 0; it < 60 && b - a > 1e-14; ++it) {
        const double m = 0.5 * (a + b);
        if (!sample(m, r)) break;
        root = r[k];
        if ((log_modulus(r[k]) - y < 0) == neg_at_a)
          a = m;
        else
          b = m;
      }
      out.push_back({wrap_angle(0.5 * (a + b)), std::arg(root)});
    }
  }
  return true;
}

inline double torus_distance(TorusPoint a, TorusPoint b) {
  return std::hypot(wrap_angle(a.arg_z - b.arg_z), wrap_angle(a.arg_w - b.arg_w));
}

// Greedy single-link clustering on the torus.
inline std::vector<std::vector<TorusPoint>> cluster_points(const std::vector<TorusPoint>& pts,
                                                           double radius) {
  std::vector<int> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (torus_distance(pts[i], pts[j]) < radius) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
  std::vector<std::vector<TorusPoint>> groups;
  std::vector<int> slot(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const int r = find(static_cast<int>(i));
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[slot[r]].push_back(pts[i]);
  }
  return groups;
}

struct TwoToOneStats {
  int samples = 0;        // sampled interior amoeba cells with isolated preimages
  int exactly_two = 0;
  int max_count = 0;
  int non_isolated = 0;   // cells whose preimage is a whole circle
  double fraction_two = 0.0;
};

// Preimage cluster counts at random interior amoeba cells (cells whose 5x5
// neighbourhood is all Amoeba).
inline TwoToOneStats two_to_one_stats(const LaurentPoly2& p, const AmoebaRaster& r, int samples,
                                      std::uint64_t seed = 0, int n_theta = 2048) {
  const int nx = r.window.nx, ny = r.window.ny;
  std::vector<std::size_t> interior;
  for (int j = 2; j < ny - 2; ++j)
    for (int i = 2; i < nx - 2; ++i) {
      bool all = true;
      for (int b = -2; b <= 2 && all; ++b)
        for (int a = -2; a <= 2 && all; ++a)
          if (r.at(i + a, j + b).state != CellState::Amoeba) all = false;
      if (all) interior.push_back(static_cast<std::size_t>(j) * nx + i);
    }
  if (static_cast<int>(interior.size()) < samples)
    throw input_error("insufficient_samples", "too few interior amoeba cells to sample");
  std::mt19937_64 rng(seed);
  std::shuffle(interior.begin(), interior.end(), rng);
  interior.resize(samples);
  std::sort(interior.begin(), interior.end());

  std::vector<int> counts(samples, 0);
  parallel_for(samples, [&](std::size_t s) {
    const int i = static_cast<int>(interior[s] % nx), j = static_cast<int>(interior[s] / nx);
    std::vector<TorusPoint> pts;
    if (!torus_preimages(p, r.window.cx(i), r.window.cy(j), n_theta, pts)) {
      counts[s] = -1;
      return;
    }
    counts[s] = static_cast<int>(cluster_points(pts, r.band).size());
  });
  TwoToOneStats st;
  for (int c : counts) {
    if (c < 0) {
      ++st.non_isolated;
      continue;
    }
    ++st.samples;
    if (c == 2) ++st.exactly_two;
    st.max_count = std::max(st.max_count, c);
  }
  st.fraction_two = st.samples > 0 ? static_cast<double>(st.exactly_two) / st.samples : 0.0;
  return st;
}

// ---------------------------------------------------------------------------
// Lift angles

inline constexpr TorusPoint kTheta[4] = {
    {0.0, 0.0}, {0.0, std::numbers::pi}, {std::numbers::pi, 0.0}, {std::numbers::pi, std::numbers::pi}};

struct ThetaEntry {
  LatticePoint ord;
  TorusPoint center;
  double radius = 0.0;       // largest distance of a lifted point from center
  TorusPoint nearest;        // nearest point of Theta + (arg b, arg c)
  int nearest_index = -1;    // index into kTheta
  double distance = 0.0;
  int lifted = 0;
};

struct ThetaReport {
  std::vector<ThetaEntry> entries;
  double shift_z = 0.0, shift_w = 0.0;  // (arg b, arg c) used for the translate
};

inline TorusPoint circular_mean(const std::vector<TorusPoint>& pts) {
  Complex sz{}, sw{};
  for (const auto& q : pts) {
    sz += std::polar(1.0, q.arg_z);
    sw += std::polar(1.0, q.arg_w);
  }
  return {std::arg(sz), std::arg(sw)};
}

// Lifts traced boundary points of each component and summarizes their
// arguments.  `lift_tol` bounds the log-distance between a boundary point and
// the fiber point chosen for it.
inline ThetaReport theta_points(const LaurentPoly2& p, const std::vector<ComponentInfo>& comps,
                                int boundary_points, const RealnessTransform& realness,
                                double pos_tol = 1e-9, double lift_tol = 1e-4) {
  ThetaReport rep;
  rep.shift_z = realness.arg_b;
  rep.shift_w = realness.arg_c;
  for (const auto& c : comps) {
    ThetaEntry e;
    e.ord = c.ord;
    std::vector<TorusPoint> pts;
    for (auto [x, y] : trace_boundary(p, c, boundary_points, pos_tol)) {
      const Lift l = lift_point(p, x, y);
      if (!(l.gap <= lift_tol))
        throw numerical_error("lift_failure", "no fiber point within tolerance of a boundary point");
      pts.push_back({l.arg_z, l.arg_w});
    }
    e.lifted = static_cast<int>(pts.size());
    e.center = circular_mean(pts);
    for (const auto& q : pts) e.radius = std::max(e.radius, torus_distance(q, e.center));
    e.distance = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
      const TorusPoint t{wrap_angle(kTheta[k].arg_z + rep.shift_z),
                         wrap_angle(kTheta[k].arg_w + rep.shift_w)};
      const double d = torus_distance(t, e.center);
      if (d < e.distance) {
        e.distance = d;
        e.nearest = t;
        e.nearest_index = k;
      }
    }
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace amoeba
