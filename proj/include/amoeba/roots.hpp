#pragma once

// Simultaneous (Aberth-Ehrlich) root finding for univariate complex
// polynomials, with Newton polishing.  This is the kernel behind every fiber
// computation, so it is deterministic: no random starts.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "amoeba/error.hpp"
#include "amoeba/poly.hpp"

namespace amoeba {

struct RootSet {
  std::vector<Complex> roots;  // with multiplicity, size == degree
  double max_residual = 0.0;
};

struct RootOptions {
  double residual_tol = 1e-12;
  int max_iter = 200;
};

namespace detail {

// Scaled backward residual |u(r)| / sum |c_k| |r|^k.
inline double scaled_residual(std::span<const Complex> c, Complex r) {
  Complex acc{0.0, 0.0};
  double scale = 0.0;
  const double ar = std::abs(r);
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * r + c[k];
    scale = scale * ar + std::abs(c[k]);
  }
  return scale > 0.0 ? std::abs(acc) / scale : 0.0;
}

// Value and derivative by Horner.
inline void horner2(std::span<const Complex> c, Complex x, Complex& p, Complex& dp) {
  p = c.back();
  dp = Complex{};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * x + p;
    p = p * x + c[k];
  }
}

// Number of other roots within the cluster radius; a crude multiplicity.
inline int cluster_size(const std::vector<Complex>& r, std::size_t i, double radius) {
  int m = 1;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (j != i && std::abs(r[j] - r[i]) < radius * std::max(1.0, std::abs(r[i]))) ++m;
  return m;
}

inline void quadratic_roots(Complex a, Complex b, Complex c, Complex out[2]) {
  // Cancellation-free form: q = -(b + sign * sqrt(disc)) / 2.
  const Complex s = std::sqrt(b * b - 4.0 * a * c);
  const Complex q = (std::real(std::conj(b) * s) >= 0.0) ? -0.5 * (b + s) : -0.5 * (b - s);
  if (q == Complex{}) {
    out[0] = out[1] = Complex{};
    return;
  }
  out[0] = q / a;
  out[1] = c / q;
}

}  // namespace detail

inline RootSet find_roots(const UniPoly& u, const RootOptions& opt = {}) {
  if (u.coeffs.empty() || u.coeffs.back() == Complex{})
    throw input_error("bad_poly", "leading coefficient must be nonzero");
  RootSet out;
  // Exact zero roots.
  std::size_t lead_zeros = 0;
  while (lead_zeros < u.coeffs.size() && u.coeffs[lead_zeros] == Complex{}) ++lead_zeros;
  out.roots.assign(lead_zeros, Complex{});
  std::span<const Complex> c(u.coeffs.data() + lead_zeros, u.coeffs.size() - lead_zeros);
  const int n = static_cast<int>(c.size()) - 1;
  if (n <= 0) return out;

  std::vector<Complex> z(n);
  if (n == 1) {
    z[0] = -c[0] / c[1];
  } else if (n == 2) {
    Complex q[2];
    detail::quadratic_roots(c[2], c[1], c[0], q);
    z[0] = q[0];
    z[1] = q[1];
  } else {
    // Start on a circle of the Cauchy-type radius max |c_k / c_n|^(1/(n-k)),
    // along a golden-angle spiral so no two starts are symmetric.
    double radius = 0.0;
    for (int k = 0; k < n; ++k)
      radius = std::max(radius, std::pow(std::abs(c[k] / c[n]), 1.0 / (n - k)));
    constexpr double golden = 2.399963229728653;  // pi * (3 - sqrt 5)
    for (int k = 0; k < n; ++k) {
      const double r = radius * (0.5 + 0.5 * (k + 0.5) / n);
      z[k] = std::polar(r, golden * k + 0.4);
    }
    std::vector<char> done(n, 0);
    int remaining = n;
    for (int it = 0; it < opt.max_iter && remaining > 0; ++it) {
      for (int i = 0; i < n; ++i) {
        if (done[i]) continue;
        Complex p, dp;
        detail::horner2(c, z[i], p, dp);
        if (p == Complex{}) {
          done[i] = 1;
          --remaining;
          continue;
        }
        const Complex ratio = p / dp;
        Complex sum{};
        for (int j = 0; j < n; ++j)
          if (j != i) sum += 1.0 / (z[i] - z[j]);
        const Complex step = ratio / (1.0 - ratio * sum);
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
        z[i] -= step;
        if (std::abs(step) <= 4e-16 * std::abs(z[i])) {
          done[i] = 1;
          --remaining;
        }
      }
    }
  }

  // Newton polish, keeping a step only if it reduces the residual.
  for (int i = 0; i < n; ++i) {
    for (int pass = 0; pass < 3; ++pass) {
      Complex p, dp;
      detail::horner2(c, z[i], p, dp);
      if (p == Complex{} || dp == Complex{}) break;
      const Complex cand = z[i] - p / dp;
      if (detail::scaled_residual(c, cand) < detail::scaled_residual(c, z[i]))
        z[i] = cand;
      else
        break;
    }
  }

  for (int i = 0; i < n; ++i) {
    const double res = detail::scaled_residual(c, z[i]);
    const int m = detail::cluster_size(z, i, 1e-6);
    const double tol = m > 1 ? std::pow(opt.residual_tol, 1.0 / m) : opt.residual_tol;
    if (!(res <= tol))
      throw numerical_error("no_convergence",
                            "root finder did not converge: residual " + std::to_string(res));
    out.max_residual = std::max(out.max_residual, res);
  }
  out.roots.insert(out.roots.end(), z.begin(), z.end());
  return out;
}

struct ModulusCount {
  int count = 0;
  bool on_band = false;
};

// Roots strictly inside the circle |t| < r e^(-band), and whether any root
// sits within band of the circle in log-modulus.
inline ModulusCount roots_below_modulus(const RootSet& rs, double r, double band) {
  ModulusCount out;
  const double lr = std::log(r);
  for (const auto& root : rs.roots) {
    const double lm = std::log(std::abs(root));
    if (lm < lr - band) ++out.count;
    if (std::abs(lm - lr) < band) out.on_band = true;
  }
  return out;
}

}  // namespace amoeba
