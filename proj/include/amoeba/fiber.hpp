#pragma once

// Fiber profiles: the roots of P restricted to a circle in one coordinate.
//
// For the w-axis at log-modulus x, we sample z = e^(x + i theta) at uniform
// angles and solve for w.  Sorting the log-moduli of the roots gives functions
// f_0 <= f_1 <= ... of theta; the amoeba slice {y : (x, y) in amoeba} is the
// union of their ranges.  The z-axis is the mirror image.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "amoeba/error.hpp"
#include "amoeba/poly.hpp"
#include "amoeba/roots.hpp"

namespace amoeba {

enum class Axis { W, Z };  // W: solve for w on |z| = e^x; Z: solve for z on |w| = e^y

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double wrap_angle(double a) {
  // Into (-pi, pi].
  a = std::remainder(a, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  return a;
}

namespace detail {

inline int structural_degree(const LaurentPoly2& p, Axis axis) {
  return axis == Axis::W ? p.w_span() : p.z_span();
}

inline int axis_shift(const LaurentPoly2& p, Axis axis) {
  return axis == Axis::W ? p.min_a2() : p.min_a1();
}

// Fiber at a fixed point of the other coordinate; nullopt-like failure is
// signalled by returning false (degenerate fiber or lost leading term).
inline bool try_fiber(const LaurentPoly2& p, Axis axis, Complex fixed, std::vector<Complex>& roots) {
  try {
    UniPoly u = axis == Axis::W ? restrict_to_w(p, fixed) : restrict_to_z(p, fixed);
    if (u.degree() != structural_degree(p, axis)) return false;
    roots = find_roots(u).roots;
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace detail

// Roots of one fiber, sorted by modulus.  Angles where the fiber degenerates
// are nudged forward by band/7 (a few times) before giving up.
struct FiberSample {
  double theta = 0.0;          // angle actually used
  std::vector<Complex> roots;  // ascending modulus
  bool ok = false;
};

inline FiberSample sample_fiber(const LaurentPoly2& p, Axis axis, double coord, double theta,
                                double nudge) {
  FiberSample s;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double th = theta + attempt * nudge;
    if (detail::try_fiber(p, axis, std::polar(std::exp(coord), th), s.roots)) {
      s.theta = th;
      s.ok = true;
      std::sort(s.roots.begin(), s.roots.end(),
                [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
      return s;
    }
  }
  s.theta = theta;
  s.roots.clear();
  return s;
}

inline double log_modulus(Complex r) {
  const double a = std::abs(r);
  return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(a);
}

// Sampled profile of one axis at one coordinate.
struct FiberProfile {
  Axis axis = Axis::W;
  double coord = 0.0;
  int n_theta = 0;
  int degree = 0;      // structural degree in the solved variable
  int shift = 0;       // minimal exponent of the solved variable
  int failed = 0;      // angles where every nudge degenerated
  std::vector<double> all_logs;    // every sampled log-modulus, ascending
  std::vector<double> kmin, kmax;  // range of the k-th smallest log-modulus
};

inline FiberProfile fiber_profile(const LaurentPoly2& p, Axis axis, double coord, int n_theta,
                                  double band) {
  FiberProfile f;
  f.axis = axis;
  f.coord = coord;
  f.n_theta = n_theta;
  f.degree = detail::structural_degree(p, axis);
  f.shift = detail::axis_shift(p, axis);
  f.kmin.assign(f.degree, std::numeric_limits<double>::infinity());
  f.kmax.assign(f.degree, -std::numeric_limits<double>::infinity());
  f.all_logs.reserve(static_cast<std::size_t>(n_theta) * f.degree);
  for (int j = 0; j < n_theta; ++j) {
    const FiberSample s = sample_fiber(p, axis, coord, kTwoPi * j / n_theta, band / 7.0);
    if (!s.ok) {
      ++f.failed;
      continue;
    }
    for (int k = 0; k < f.degree; ++k) {
      const double lm = log_modulus(s.roots[k]);
      f.kmin[k] = std::min(f.kmin[k], lm);
      f.kmax[k] = std::max(f.kmax[k], lm);
      f.all_logs.push_back(lm);
    }
  }
  std::sort(f.all_logs.begin(), f.all_logs.end());
  return f;
}

// Verdict of one axis at the other coordinate t (y for the w-axis).
struct AxisVerdict {
  bool band_hit = false;  // some sampled root within band of the circle
  bool varies = false;    // root count inside the circle changes with angle
  bool near = false;      // some sampled root within 3 * band
  bool failed = false;    // an angle could not be sampled at all
  int count = 0;          // roots strictly inside e^(t - band), when constant
};

inline AxisVerdict classify(const FiberProfile& f, double t, double band) {
  AxisVerdict v;
  auto any_within = [&](double radius) {
    auto it = std::upper_bound(f.all_logs.begin(), f.all_logs.end(), t - radius);
    return it != f.all_logs.end() && *it < t + radius;
  };
  v.band_hit = any_within(band);
  v.near = any_within(3.0 * band);
  v.failed = f.failed > 0;
  const double cut = t - band;
  for (int k = 0; k < f.degree; ++k) {
    if (f.kmax[k] < cut)
      ++v.count;
    else if (f.kmin[k] < cut)
      v.varies = true;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Refined slices: extrema of each f_k polished by golden-section search, so
// slice endpoints are accurate far below the angular sampling step.

struct SliceEnd {
  double value = 0.0;  // extremal log-modulus
  double theta = 0.0;  // angle of the fixed coordinate where it is attained
  Complex root{};      // the solved coordinate there
};

struct RefinedSlice {
  Axis axis = Axis::W;
  double coord = 0.0;
  int shift = 0;
  bool usable = true;            // false if sampling failed somewhere
  std::vector<SliceEnd> lo, hi;  // per k
};

namespace detail {

inline bool kth_log(const LaurentPoly2& p, Axis axis, double coord, double theta, int k,
                    double& out, Complex& root) {
  std::vector<Complex> r;
  if (!try_fiber(p, axis, std::polar(std::exp(coord), theta), r)) return false;
  std::nth_element(r.begin(), r.begin() + k, r.end(),
                   [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  root = r[k];
  out = log_modulus(root);
  return true;
}

// Golden-section search for an extremum of f_k in [a, b].
inline SliceEnd golden_extremum(const LaurentPoly2& p, Axis axis, double coord, int k, double a,
                                double b, bool maximize, SliceEnd best) {
  constexpr double g = 0.6180339887498949;
  const double sign = maximize ? -1.0 : 1.0;
  auto f = [&](double th, SliceEnd& e) {
    double v;
    Complex r;
    if (!kth_log(p, axis, coord, th, k, v, r)) return std::numeric_limits<double>::infinity();
    e = {v, th, r};
    return sign * v;
  };
  SliceEnd e1, e2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c, e1), fd = f(d, e2);
  for (int it = 0; it < 60 && (b - a) > 1e-13; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      e2 = e1;
      c = b - g * (b - a);
      fc = f(c, e1);
    } else {
      a = c;
      c = d;
      fc = fd;
      e1 = e2;
      d = a + g * (b - a);
      fd = f(d, e2);
    }
    const SliceEnd& cand = fc < fd ? e1 : e2;
    if (sign * cand.value < sign * best.value) best = cand;
  }
  return best;
}

}  // namespace detail

inline RefinedSlice refined_slice(const LaurentPoly2& p, Axis axis, double coord, int n_theta) {
  RefinedSlice s;
  s.axis = axis;
  s.coord = coord;
  s.shift = detail::axis_shift(p, axis);
  const int deg = detail::structural_degree(p, axis);
  s.lo.assign(deg, {std::numeric_limits<double>::infinity(), 0.0, {}});
  s.hi.assign(deg, {-std::numeric_limits<double>::infinity(), 0.0, {}});
  if (deg == 0) return s;
  const double step = kTwoPi / n_theta;
  std::vector<Complex> r;
  for (int j = 0; j < n_theta; ++j) {
    const double th = step * j;
    if (!detail::try_fiber(p, axis, std::polar(std::exp(coord), th), r)) {
      s.usable = false;
      continue;
    }
    std::sort(r.begin(), r.end(), [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    for (int k = 0; k < deg; ++k) {
      const double lm = log_modulus(r[k]);
      if (lm < s.lo[k].value) s.lo[k] = {lm, th, r[k]};
      if (lm > s.hi[k].value) s.hi[k] = {lm, th, r[k]};
    }
  }
  for (int k = 0; k < deg; ++k) {
    if (std::isfinite(s.lo[k].value))
      s.lo[k] = detail::golden_extremum(p, axis, coord, k, s.lo[k].theta - step,
                                        s.lo[k].theta + step, false, s.lo[k]);
    if (std::isfinite(s.hi[k].value))
      s.hi[k] = detail::golden_extremum(p, axis, coord, k, s.hi[k].theta - step,
                                        s.hi[k].theta + step, true, s.hi[k]);
  }
  return s;
}

struct SliceVerdict {
  bool inside = false;  // t lies in some [lo_k, hi_k]
  int count = 0;        // number of k with hi_k < t (valid when !inside)
};

inline SliceVerdict classify(const RefinedSlice& s, double t) {
  SliceVerdict v;
  for (std::size_t k = 0; k < s.lo.size(); ++k) {
    if (s.hi[k].value < t)
      ++v.count;
    else if (s.lo[k].value <= t)
      v.inside = true;
  }
  return v;
}

}  // namespace amoeba
