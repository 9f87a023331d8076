#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "errors.hpp"
#include "series.hpp"
#include "weierstrass.hpp"

namespace pf {


// Polynomial in x1..xn and y, parsed from text such as "y^2 - (1+2i)*x1*x2^3 + 1/3".
class ExprParser {
public:
  ExprParser(const std::string& s, int n, int cap) : s_(s), n_(n), cap_(cap) {}

  // Coefficients of y^0, y^1, ...
  std::vector<TruncatedSeries> parse() {
    auto r = expr();
    skip();
    if (pos_ != s_.size()) throw FormatError("trailing input in '" + s_ + "'");
    return r;
  }

private:
  using YPoly = std::vector<TruncatedSeries>;
  TruncatedSeries zero() const { return TruncatedSeries(n_, cap_); }
  YPoly add(YPoly a, const YPoly& b, bool neg) {
    while (a.size() < b.size()) a.push_back(zero());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = neg ? a[i] - b[i] : a[i] + b[i];
    return a;
  }
  YPoly mul(const YPoly& a, const YPoly& b) {
    YPoly r(a.size() + b.size() - 1, zero());
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
  }
  void skip() {
    while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  mpz_class integer() {
    skip();
    std::size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) throw FormatError("number expected in '" + s_ + "'");
    return mpz_class(s_.substr(st, pos_ - st));
  }
  int small(int hi) {
    mpz_class v = integer();
    if (v > hi) throw FormatError("integer too large in '" + s_ + "'");
    return static_cast<int>(v.get_si());
  }
  YPoly expr() {
    bool neg = eat('-');
    if (!neg) eat('+');
    YPoly r = add({zero()}, term(), neg);
    for (;;) {
      if (eat('+')) r = add(r, term(), false);
      else if (eat('-')) r = add(r, term(), true);
      else return r;
    }
  }
  YPoly term() {
    YPoly r = factor();
    for (;;) {
      if (eat('*')) r = mul(r, factor());
      else if (eat('/')) {
        mpz_class d = integer();
        if (d == 0) throw FormatError("division by zero in '" + s_ + "'");
        for (auto& c : r) c = c.scaled(GaussRational(mpq_class(mpz_class(1), d)));
      } else return r;
    }
  }
  YPoly factor() {
    YPoly b = atom();
    if (eat('^')) {
      const int e = small(255);
      YPoly r{TruncatedSeries::constant(n_, cap_, GaussRational(1))};
      for (int k = 0; k < e; ++k) r = mul(r, b);
      return r;
    }
    return b;
  }
  YPoly atom() {
    skip();
    if (eat('(')) {
      YPoly r = expr();
      if (!eat(')')) throw FormatError("')' expected in '" + s_ + "'");
      return r;
    }
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      mpz_class v = integer();
      if (eat('i')) return {TruncatedSeries::constant(n_, cap_, GaussRational(mpq_class(0), mpq_class(v)))};
      return {TruncatedSeries::constant(n_, cap_, GaussRational(v))};
    }
    if (eat('i')) return {TruncatedSeries::constant(n_, cap_, GaussRational::I())};
    if (eat('y')) return {zero(), TruncatedSeries::constant(n_, cap_, GaussRational(1))};
    if (eat('x')) {
      const int k = small(kMaxVars);
      if (k < 1 || k > n_) throw FormatError("variable out of range in '" + s_ + "'");
      return {TruncatedSeries::var(n_, cap_, k - 1)};
    }
    throw FormatError("unexpected input in '" + s_ + "'");
  }
  std::string s_;
  std::size_t pos_ = 0;
  int n_, cap_;
};

inline TruncatedSeries parse_series(const std::string& s, int n, int cap) {
  auto c = ExprParser(s, n, cap).parse();
  if (c.size() > 1) {
    for (std::size_t i = 1; i < c.size(); ++i)
      if (!c[i].is_zero()) throw FormatError("y in a series expression");
  }
  return c[0];
}

inline MonicPoly parse_monic(const std::string& s, int n, int cap) {
  auto c = ExprParser(s, n, cap).parse();
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
  if (!(c.back() == TruncatedSeries::constant(n, cap, GaussRational(1)))) throw FormatError("not monic: " + s);
  return MonicPoly::from_y_coeffs(c);
}

// Homogeneous polynomial from text; all terms must share one degree.
inline HPoly parse_hpoly(const std::string& s, int n) {
  auto f = parse_series(s, n, 24);
  HPoly out(n, 0);
  bool found = false;
  for (auto& c : f.components()) {
    if (c.is_zero()) continue;
    if (found) throw FormatError("not homogeneous: " + s);
    out = c;
    found = true;
  }
  return out;
}

// ---------------------------------------------------------------- text output the parser reads back

inline std::string coeff_expr(const GaussRational& c) {
  auto part = [](const mpq_class& q, bool imag) {
    std::string s = mpz_class(abs(q.get_num())).get_str();
    if (imag) s += "*i";
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
  };
  std::string out;
  if (sgn(c.re)) out = (sgn(c.re) < 0 ? "-" : "") + part(c.re, false);
  if (sgn(c.im)) {
    if (out.empty()) out = sgn(c.im) < 0 ? "-" : "";
    else out += sgn(c.im) < 0 ? " - " : " + ";
    out += part(c.im, true);
  }
  return out.empty() ? "0" : out;
}

inline std::string monomial_expr(const Exp& e, int n, int ypow = 0) {
  std::string out;
  auto add = [&](const std::string& v, int k) {
    if (!k) return;
    if (!out.empty()) out += "*";
    out += v;
    if (k > 1) out += "^" + std::to_string(k);
  };
  for (int i = 0; i < n; ++i) add("x" + std::to_string(i + 1), e[i]);
  add("y", ypow);
  return out;
}

inline void append_term(std::string& out, const GaussRational& c, const std::string& mono) {
  const bool complex = sgn(c.re) && sgn(c.im);
  std::string cs = coeff_expr(c);
  bool neg = !complex && cs[0] == '-';
  if (neg) cs = cs.substr(1);
  std::string body;
  if (complex) body = "(" + cs + ")";
  else body = cs;
  if (!mono.empty()) body = body == "1" ? mono : body + "*" + mono;
  if (out.empty()) out = (neg ? "-" : "") + body;
  else out += (neg ? " - " : " + ") + body;
}

inline std::string to_expr(const std::vector<Term>& terms, int n, int ypow = 0) {
  std::string out;
  for (auto& [e, c] : terms) append_term(out, c, monomial_expr(e, n, ypow));
  return out;
}

inline std::string to_expr(const HPoly& p) { return p.is_zero() ? "0" : to_expr(p.terms(), p.nvars()); }
inline std::string to_expr(const TruncatedSeries& f) { return f.is_zero() ? "0" : to_expr(f.terms(), f.nvars()); }

inline std::string to_expr(const MonicPoly& P) {
  std::string out = P.degY() > 1 ? "y^" + std::to_string(P.degY()) : "y";
  for (int j = P.degY() - 1; j >= 0; --j) {
    const auto c = P.coeff_y(j);
    for (auto& [e, co] : c.terms()) append_term(out, co, monomial_expr(e, P.nvars(), j));
  }
  return out;
}

}  // namespace pf
