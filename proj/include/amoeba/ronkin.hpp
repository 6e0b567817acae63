#pragma once

// Ronkin function: torus average of log|P| at fixed log-moduli, by the
// periodic trapezoid (rectangle) rule.

#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "amoeba/error.hpp"
#include "amoeba/fiber.hpp"
#include "amoeba/poly.hpp"

namespace amoeba {

struct RonkinValue {
  double value = 0.0;
  int grid_n = 0;
  double singular_fraction = 0.0;  // share of nodes with |P| < 1e-13, skipped
};

namespace detail {

// Pairwise summation with a fixed split, so the result depends only on the
// order of the inputs.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

}  // namespace detail

inline RonkinValue ronkin_value(const LaurentPoly2& p, double x, double y, int grid_n) {
  if (grid_n < 16) throw input_error("bad_param", "grid_n must be at least 16");
  const double ry = std::exp(y);
  std::vector<Complex> wpow(grid_n);
  for (int j = 0; j < grid_n; ++j) wpow[j] = std::polar(ry, kTwoPi * j / grid_n);
  std::vector<double> row_sums(grid_n);
  std::vector<long> row_skipped(grid_n, 0);
  std::vector<double> row(grid_n);
  for (int i = 0; i < grid_n; ++i) {
    const Complex z = std::polar(std::exp(x), kTwoPi * i / grid_n);
    // Coefficients in w at this z; the w-valuation contributes shift * y.
    std::vector<Complex> c(p.w_span() + 1);
    for (const auto& t : p.terms()) c[t.exp.a2 - p.min_a2()] += t.coef * ipow(z, t.exp.a1);
    std::size_t used = 0;
    for (int j = 0; j < grid_n; ++j) {
      Complex acc{};
      for (std::size_t k = c.size(); k-- > 0;) acc = acc * wpow[j] + c[k];
      const double m = std::abs(acc) * std::pow(ry, p.min_a2());
      if (m < 1e-13) {
        ++row_skipped[i];
        continue;
      }
      row[used++] = std::log(m);
    }
    row_sums[i] = detail::pairwise_sum(std::span<const double>(row.data(), used));
  }
  long skipped = 0;
  for (long s : row_skipped) skipped += s;
  const double total = static_cast<double>(grid_n) * grid_n;
  RonkinValue r;
  r.grid_n = grid_n;
  r.singular_fraction = skipped / total;
  if (skipped == static_cast<long>(total))
    throw numerical_error("all_singular", "every quadrature node is singular");
  r.value = detail::pairwise_sum(row_sums) / (total - skipped);
  return r;
}

struct Gradient {
  double gx = 0.0, gy = 0.0;
};

// Central differences of ronkin_value.
inline Gradient ronkin_gradient(const LaurentPoly2& p, double x, double y, int grid_n,
                                double h = 1e-3) {
  if (!(h > 0.0)) throw input_error("bad_param", "step must be positive");
  const double fxp = ronkin_value(p, x + h, y, grid_n).value;
  const double fxm = ronkin_value(p, x - h, y, grid_n).value;
  const double fyp = ronkin_value(p, x, y + h, grid_n).value;
  const double fym = ronkin_value(p, x, y - h, grid_n).value;
  return {(fxp - fxm) / (2 * h), (fyp - fym) / (2 * h)};
}

// Both sign branches of the amoeba-to-coamoeba formula
// (+-pi dN/dy, -+pi dN/dx), wrapped into (-pi, pi].  Only meaningful for
// real Harnack polynomials in normalized form; used as a cross-check.
struct ArgEstimate {
  double plus_z, plus_w;    // (+pi N_y, -pi N_x)
  double minus_z, minus_w;  // (-pi N_y, +pi N_x)
};

inline ArgEstimate arg_map_estimate(const LaurentPoly2& p, double x, double y, int grid_n,
                                    double h = 1e-3) {
  const Gradient g = ronkin_gradient(p, x, y, grid_n, h);
  constexpr double pi = std::numbers::pi;
  return {wrap_angle(pi * g.gy), wrap_angle(-pi * g.gx), wrap_angle(-pi * g.gy),
          wrap_angle(pi * g.gx)};
}

}  // namespace amoeba
