#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "amoeba/roots.hpp"

using namespace amoeba;

namespace {

// Coefficients of c * prod (t - r_i), ascending.
std::vector<Complex> expand(const std::vector<Complex>& roots, Complex lead) {
  std::vector<Complex> m{lead};
  for (const auto& r : roots) {
    std::vector<Complex> next(m.size() + 1);
    for (std::size_t i = 0; i < m.size(); ++i) {
      next[i + 1] += m[i];
      next[i] -= r * m[i];
    }
    m = std::move(next);
  }
  return m;
}

// Greedy matching distance between two root multisets.
double match_error(std::vector<Complex> a, std::vector<Complex> b) {
  double worst = 0.0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](Complex p, Complex q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x) / std::max(1.0, std::abs(x)));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST(Roots, LinearAndQuadraticClosedForm) {
  const RootSet l = find_roots(UniPoly{{Complex(2, 0), Complex(-4, 0)}, 0});
  ASSERT_EQ(l.roots.size(), 1u);
  EXPECT_NEAR(std::abs(l.roots[0] - 0.5), 0.0, 1e-15);

  // Quadratic formula oracle on random coefficients.
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const Complex a(n(rng), n(rng)), b(n(rng), n(rng)), c(n(rng), n(rng));
    const Complex d = std::sqrt(b * b - 4.0 * a * c);
    const std::vector<Complex> want = {(-b + d) / (2.0 * a), (-b - d) / (2.0 * a)};
    const RootSet rs = find_roots(UniPoly{{c, b, a}, 0});
    EXPECT_LT(match_error(rs.roots, want), 1e-10);
  }
}

TEST(Roots, CubicFiberAtOne) {
  // w^2 - 3w + 1: roots (3 +- sqrt 5) / 2.
  const RootSet rs = find_roots(UniPoly{{1.0, -3.0, 1.0}, 0});
  EXPECT_LT(match_error(rs.roots, {(3 + std::sqrt(5.0)) / 2, (3 - std::sqrt(5.0)) / 2}), 1e-14);
}

TEST(Roots, KnownRootsAreRecovered) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> r(0.2, 3.0), a(-3.2, 3.2);
  for (int deg = 3; deg <= 12; ++deg) {
    std::vector<Complex> want;
    for (int k = 0; k < deg; ++k) want.push_back(std::polar(r(rng), a(rng)));
    const RootSet rs = find_roots(UniPoly{expand(want, Complex(0.7, -0.2)), 0});
    EXPECT_LT(match_error(rs.roots, want), 1e-8) << "degree " << deg;
  }
}

TEST(Roots, RandomDegree20ReconstructsProduct) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> m(0.0, 1.0), a(0.0, 6.283185307179586);
  for (int k = 0; k < 200; ++k) {
    std::vector<Complex> c(21);
    for (auto& x : c) x = std::polar(m(rng), a(rng));
    const RootSet rs = find_roots(UniPoly{c, 0});
    ASSERT_EQ(rs.roots.size(), 20u);
    EXPECT_LT(rs.max_residual, 1e-10);
    const std::vector<Complex> e = expand(rs.roots, c.back());
    double scale = 0.0, err = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      scale = std::max(scale, std::abs(c[i]));
      err = std::max(err, std::abs(e[i] - c[i]));
    }
    EXPECT_LT(err / scale, 1e-8);
  }
}

TEST(Roots, ScalingCovariance) {
  // Roots of u(s t) are the roots of u divided by s.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int k = 0; k < 30; ++k) {
    std::vector<Complex> c(9), cs(9);
    const Complex s = std::polar(std::exp(0.5 * n(rng)), n(rng));
    for (std::size_t i = 0; i < c.size(); ++i) {
      c[i] = Complex(n(rng), n(rng));
      cs[i] = c[i] * std::pow(s, static_cast<int>(i));
    }
    std::vector<Complex> scaled = find_roots(UniPoly{c, 0}).roots;
    for (auto& r : scaled) r /= s;
    EXPECT_LT(match_error(find_roots(UniPoly{cs, 0}).roots, scaled), 1e-8);
  }
}

TEST(Roots, ZeroRootsAndClusters) {
  // t^2 (t - 2): two exact zeros.
  const RootSet z = find_roots(UniPoly{{0.0, 0.0, -2.0, 1.0}, 0});
  EXPECT_EQ(std::count(z.roots.begin(), z.roots.end(), Complex{}), 2);
  // (t - 1)^3 (t + 2): a triple root is resolved to ~eps^(1/3).
  const RootSet c = find_roots(UniPoly{expand({1.0, 1.0, 1.0, -2.0}, 1.0), 0});
  int near_one = 0;
  for (const auto& r : c.roots) near_one += std::abs(r - 1.0) < 1e-4;
  EXPECT_EQ(near_one, 3);
}

TEST(Roots, DegreeZeroHasNoRoots) {
  EXPECT_TRUE(find_roots(UniPoly{{3.0}, 0}).roots.empty());
}

TEST(Roots, CountBelowModulus) {
  const RootSet rs{{0.5, Complex(0, 2.0), -3.0}, 0.0};
  const ModulusCount a = roots_below_modulus(rs, 1.0, 0.01);
  EXPECT_EQ(a.count, 1);
  EXPECT_FALSE(a.on_band);
  const ModulusCount b = roots_below_modulus(rs, 2.001, 0.01);
  EXPECT_EQ(b.count, 1);
  EXPECT_TRUE(b.on_band);
}
