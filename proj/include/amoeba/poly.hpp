#pragma once

// Bivariate Laurent polynomials with complex double coefficients.
//
// A LaurentPoly2 is an immutable, lexicographically ordered list of
// (exponent, coefficient) terms with no zero coefficients.  Parsing accepts
//
//   poly   := term (('+'|'-') term)*
//   term   := coef ('*'? mono)? | mono
//   coef   := number | '(' number (('+'|'-') number 'i')? ')' | number 'i'
//   mono   := var ('^' int)? ('*' var ('^' int)?)?
//
// with insignificant whitespace and an optional leading sign.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "amoeba/error.hpp"

namespace amoeba {

using Complex = std::complex<double>;

struct Exponent {
  int a1 = 0;  // power of z
  int a2 = 0;  // power of w
  auto operator<=>(const Exponent&) const = default;
};

struct Term {
  Exponent exp;
  Complex coef;
};

// Integer power by repeated squaring; negative powers invert the base.
inline Complex ipow(Complex base, int n) {
  if (n < 0) {
    base = 1.0 / base;
    n = -n;
  }
  Complex acc{1.0, 0.0};
  while (n > 0) {
    if (n & 1) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

// Polynomial in one variable: sum coeffs[k] * t^(k + shift).
struct UniPoly {
  std::vector<Complex> coeffs;
  int shift = 0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  // Horner value of the cleared polynomial sum coeffs[k] t^k.
  Complex eval(Complex t) const {
    Complex acc{0.0, 0.0};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
    return acc;
  }
};

class LaurentPoly2 {
 public:
  static constexpr double kZeroThreshold = 1e-300;

  // Merges equal exponents and drops coefficients below kZeroThreshold.
  explicit LaurentPoly2(const std::vector<Term>& terms) {
    std::map<Exponent, Complex> merged;
    for (const auto& t : terms) {
      if (!std::isfinite(t.coef.real()) || !std::isfinite(t.coef.imag()))
        throw input_error("non_finite", "coefficient is not finite");
      merged[t.exp] += t.coef;
    }
    for (const auto& [e, c] : merged)
      if (std::abs(c) >= kZeroThreshold) terms_.push_back({e, c});
    if (terms_.empty()) throw input_error("empty_polynomial", "all terms cancel");
    init_bounds();
  }

  LaurentPoly2(std::initializer_list<Term> terms)
      : LaurentPoly2(std::vector<Term>(terms)) {}

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  int min_a1() const { return min_a1_; }
  int max_a1() const { return max_a1_; }
  int min_a2() const { return min_a2_; }
  int max_a2() const { return max_a2_; }

  // Degree span in w (resp. z) after clearing the Laurent valuation.
  int w_span() const { return max_a2_ - min_a2_; }
  int z_span() const { return max_a1_ - min_a1_; }

  Complex coefficient(Exponent e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return t.exp < x; });
    return (it != terms_.end() && it->exp == e) ? it->coef : Complex{};
  }

  bool operator==(const LaurentPoly2& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].exp != o.terms_[i].exp || terms_[i].coef != o.terms_[i].coef) return false;
    return true;
  }

 private:
  void init_bounds() {
    min_a1_ = max_a1_ = terms_.front().exp.a1;
    min_a2_ = max_a2_ = terms_.front().exp.a2;
    for (const auto& t : terms_) {
      min_a1_ = std::min(min_a1_, t.exp.a1);
      max_a1_ = std::max(max_a1_, t.exp.a1);
      min_a2_ = std::min(min_a2_, t.exp.a2);
      max_a2_ = std::max(max_a2_, t.exp.a2);
    }
  }

  std::vector<Term> terms_;  // sorted by exponent, lexicographic
  int min_a1_ = 0, max_a1_ = 0, min_a2_ = 0, max_a2_ = 0;
};

// ---------------------------------------------------------------------------
// Evaluation and restriction

// Terms are sorted by (a1, a2), so each run of equal a1 is a Horner chain in w;
// the chains are then combined by Horner in z.
inline Complex eval(const LaurentPoly2& p, Complex z, Complex w) {
  if ((z == Complex{} && p.min_a1() < 0) || (w == Complex{} && p.min_a2() < 0))
    throw input_error("domain", "zero argument with negative exponent");
  const auto& ts = p.terms();
  Complex outer{0.0, 0.0};
  int outer_exp = 0;
  bool first_group = true;
  std::size_t i = 0;
  while (i < ts.size()) {
    const int a1 = ts[i].exp.a1;
    std::size_t j = i;
    while (j < ts.size() && ts[j].exp.a1 == a1) ++j;
    // Horner in w over terms [i, j), descending a2.
    Complex inner{0.0, 0.0};
    int prev = ts[j - 1].exp.a2;
    for (std::size_t k = j; k-- > i;) {
      inner = inner * ipow(w, prev - ts[k].exp.a2) + ts[k].coef;
      prev = ts[k].exp.a2;
    }
    inner *= ipow(w, prev - p.min_a2());
    // Accumulate in z with ascending a1: outer tracks sum up to z^outer_exp.
    if (first_group) {
      outer = inner;
      outer_exp = a1;
      first_group = false;
    } else {
      outer += inner * ipow(z, a1 - outer_exp);
    }
    i = j;
  }
  return outer * ipow(z, outer_exp) * ipow(w, p.min_a2());
}

namespace detail {

// Collects coefficients of one variable after substituting the other.
// Cancellation below 1e-14 of the summed term magnitudes counts as zero.
inline UniPoly restrict_impl(const LaurentPoly2& p, Complex fixed, bool fix_z) {
  if (fixed == Complex{} && (fix_z ? p.min_a1() : p.min_a2()) < 0)
    throw input_error("domain", "zero argument with negative exponent");
  const int lo = fix_z ? p.min_a2() : p.min_a1();
  const int hi = fix_z ? p.max_a2() : p.max_a1();
  std::vector<Complex> sum(hi - lo + 1);
  std::vector<double> mag(hi - lo + 1, 0.0);
  for (const auto& t : p.terms()) {
    const int free_exp = fix_z ? t.exp.a2 : t.exp.a1;
    const int fixed_exp = fix_z ? t.exp.a1 : t.exp.a2;
    const Complex v = t.coef * ipow(fixed, fixed_exp);
    sum[free_exp - lo] += v;
    mag[free_exp - lo] += std::abs(v);
  }
  for (std::size_t k = 0; k < sum.size(); ++k)
    if (std::abs(sum[k]) <= 1e-14 * mag[k]) sum[k] = Complex{};
  while (!sum.empty() && sum.back() == Complex{}) sum.pop_back();
  if (sum.empty())
    throw numerical_error("degenerate_fiber", "all fiber coefficients vanish");
  return UniPoly{std::move(sum), lo};
}

}  // namespace detail

// w -> P(z0, w) with the w-valuation recorded in shift.
inline UniPoly restrict_to_w(const LaurentPoly2& p, Complex z0) {
  return detail::restrict_impl(p, z0, true);
}

// z -> P(z, w0) with the z-valuation recorded in shift.
inline UniPoly restrict_to_z(const LaurentPoly2& p, Complex w0) {
  return detail::restrict_impl(p, w0, false);
}

// Coefficient of z^a1 w^a2 becomes a * c * b^a1 * c^a2.
inline LaurentPoly2 torus_transform(const LaurentPoly2& p, Complex a, Complex b, Complex c) {
  if (a == Complex{} || b == Complex{} || c == Complex{})
    throw input_error("domain", "torus transform needs nonzero constants");
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms())
    out.push_back({t.exp, a * t.coef * ipow(b, t.exp.a1) * ipow(c, t.exp.a2)});
  return LaurentPoly2(out);
}

inline bool is_real(const LaurentPoly2& p, double tol) {
  for (const auto& t : p.terms())
    if (std::abs(t.coef.imag()) > tol * (1.0 + std::abs(t.coef))) return false;
  return true;
}

// Terms with minimal w-exponent, as a polynomial in z (the edge facing w -> 0).
inline UniPoly bottom_edge(const LaurentPoly2& p) {
  std::vector<Complex> c(p.z_span() + 1);
  for (const auto& t : p.terms())
    if (t.exp.a2 == p.min_a2()) c[t.exp.a1 - p.min_a1()] += t.coef;
  while (c.back() == Complex{}) c.pop_back();
  return UniPoly{std::move(c), p.min_a1()};
}

// Terms with minimal z-exponent, as a polynomial in w (the edge facing z -> 0).
inline UniPoly left_edge(const LaurentPoly2& p) {
  std::vector<Complex> c(p.w_span() + 1);
  for (const auto& t : p.terms())
    if (t.exp.a1 == p.min_a1()) c[t.exp.a2 - p.min_a2()] += t.coef;
  while (c.back() == Complex{}) c.pop_back();
  return UniPoly{std::move(c), p.min_a2()};
}

// ---------------------------------------------------------------------------
// Parsing and rendering

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  LaurentPoly2 parse() {
    std::vector<Term> terms;
    skip_ws();
    int sign = 1;
    if (peek() == '+' || peek() == '-') {
      sign = (get() == '-') ? -1 : 1;
      skip_ws();
    }
    terms.push_back(term(sign));
    for (;;) {
      skip_ws();
      if (at_end()) break;
      const char op = peek();
      if (op != '+' && op != '-') throw SyntaxError(pos_, "expected '+' or '-'");
      ++pos_;
      skip_ws();
      terms.push_back(term(op == '-' ? -1 : 1));
    }
    return LaurentPoly2(terms);
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }
  void skip_ws() {
    while (!at_end() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
      ++pos_;
  }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  bool at_var() const { return peek() == 'z' || peek() == 'w'; }

  double number() {
    const std::size_t start = pos_;
    while (!at_end() && (is_digit(peek()) || peek() == '.')) ++pos_;
    if (pos_ == start) throw SyntaxError(start, "expected number");
    if (peek() == 'e' || peek() == 'E') {
      std::size_t save = pos_++;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!is_digit(peek())) {
        pos_ = save;
      } else {
        while (is_digit(peek())) ++pos_;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc() || ptr != s_.data() + pos_) throw SyntaxError(start, "malformed number");
    return v;
  }

  int integer() {
    const std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (!is_digit(peek())) throw SyntaxError(pos_, "expected integer exponent");
    while (is_digit(peek())) ++pos_;
    int v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc()) throw SyntaxError(start, "exponent out of range");
    return v;
  }

  Complex coef() {
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      double sgn = 1.0;
      if (peek() == '+' || peek() == '-') {
        sgn = (get() == '-') ? -1.0 : 1.0;
        skip_ws();
      }
      const double first = sgn * number();
      skip_ws();
      Complex c{first, 0.0};
      if (peek() == 'i') {
        ++pos_;
        c = Complex{0.0, first};
        skip_ws();
      } else if (peek() == '+' || peek() == '-') {
        const double s2 = (get() == '-') ? -1.0 : 1.0;
        skip_ws();
        const double im = s2 * number();
        skip_ws();
        if (peek() != 'i') throw SyntaxError(pos_, "expected 'i'");
        ++pos_;
        skip_ws();
        c = Complex{first, im};
      }
      if (peek() != ')') throw SyntaxError(pos_, "expected ')'");
      ++pos_;
      return c;
    }
    const double v = number();
    skip_ws();
    if (peek() == 'i') {
      ++pos_;
      return Complex{0.0, v};
    }
    return Complex{v, 0.0};
  }

  void var_power(Exponent& e) {
    const std::size_t at = pos_;
    const char v = get();
    skip_ws();
    int n = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      n = integer();
    }
    int& slot = (v == 'z') ? e.a1 : e.a2;
    if (slot != 0) throw SyntaxError(at, "variable repeated in monomial");
    slot = n;
  }

  Exponent mono() {
    Exponent e;
    var_power(e);
    skip_ws();
    // A second factor must be the other variable, joined by '*'.
    if (peek() == '*') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (at_var()) {
        var_power(e);
      } else {
        pos_ = save;
      }
    }
    return e;
  }

  Term term(int sign) {
    if (at_var()) return {mono(), Complex{static_cast<double>(sign), 0.0}};
    const std::size_t start = pos_;
    if (!(is_digit(peek()) || peek() == '.' || peek() == '('))
      throw SyntaxError(start, "expected term");
    Complex c = coef() * static_cast<double>(sign);
    skip_ws();
    Exponent e;
    if (peek() == '*') {
      ++pos_;
      skip_ws();
      if (!at_var()) throw SyntaxError(pos_, "expected 'z' or 'w'");
      e = mono();
    } else if (at_var()) {
      e = mono();
    }
    return {e, c};
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline LaurentPoly2 parse_poly(std::string_view text) {
  return detail::PolyParser(text).parse();
}

// Canonical text form; parse_poly(render(p)) == p bit for bit.
inline std::string render(const LaurentPoly2& p) {
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const double re = t.coef.real(), im = t.coef.imag();
    std::string coef;
    bool negative = false;
    if (im == 0.0) {
      negative = std::signbit(re);
      coef = detail::fmt_double(std::abs(re));
    } else {
      coef = "(" + detail::fmt_double(re) + (std::signbit(im) ? "-" : "+") +
             detail::fmt_double(std::abs(im)) + "i)";
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    out += coef;
    if (t.exp.a1 != 0) out += "*z^" + std::to_string(t.exp.a1);
    if (t.exp.a2 != 0) out += "*w^" + std::to_string(t.exp.a2);
  }
  return out;
}

}  // namespace amoeba
