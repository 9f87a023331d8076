#pragma once

#include <algorithm>
#include <ostream>
#include <vector>

#include "ratfunc.hpp"
#include "series.hpp"

namespace pf {

// The chart x1 = t, x2 = t*w identifies degree-k homogeneous fractions with t^k * K, K = Q(i)(w).

inline UPoly dehomogenize(const HPoly& p) {
  if (p.nvars() > 2) throw NotSupported("chart needs at most two variables");
  if (p.nvars() < 2) return p.is_zero() ? UPoly() : UPoly::constant(p.terms()[0].second);
  std::vector<GaussRational> c(p.degree() + 1, GaussRational(0));
  for (auto& t : p.terms()) c[t.first[1]] = t.second;
  return UPoly(c);
}

// Homogenize p(w) to degree D in x1 (and x2 when nvars == 2).
inline HPoly homogenize(const UPoly& p, int D, int nvars) {
  if (p.deg() > D && !p.is_zero()) throw std::invalid_argument("homogenize: degree too small");
  if (D < 0) throw std::invalid_argument("homogenize: negative degree");
  std::vector<Term> t;
  for (int j = 0; j <= p.deg(); ++j) {
    if (p.coeff(j).is_zero()) continue;
    Exp e{};
    if (nvars == 1) {
      if (j) throw std::invalid_argument("homogenize: w in one variable");
      e[0] = static_cast<std::uint8_t>(D);
    } else {
      e[0] = static_cast<std::uint8_t>(D - j);
      e[1] = static_cast<std::uint8_t>(j);
    }
    t.emplace_back(e, p.coeff(j));
  }
  return HPoly(nvars, D, std::move(t));
}

// Truncated Laurent series in t over K: coefficients known for exponents lo..prec.
struct KSer {
  int lo = 0;
  int prec = -1;
  std::vector<RatFunc> c;

  KSer() = default;
  KSer(int lo_, int prec_) : lo(lo_), prec(prec_), c(std::max(0, prec_ - lo_ + 1)) {}

  static KSer constant(const RatFunc& a, int prec) {
    KSer s(0, prec);
    if (prec >= 0) s.c[0] = a;
    return s;
  }

  RatFunc at(int k) const { return k >= lo && k <= prec ? c[k - lo] : RatFunc(); }
  void set(int k, const RatFunc& v) {
    if (k < lo || k > prec) throw std::out_of_range("KSer index");
    c[k - lo] = v;
  }
  int val() const {
    for (int k = lo; k <= prec; ++k)
      if (!c[k - lo].is_zero()) return k;
    return prec + 1;
  }
  bool is_zero() const { return val() > prec; }

  KSer with_range(int nlo, int nprec) const {
    KSer r(nlo, nprec);
    for (int k = std::max(lo, nlo); k <= std::min(prec, nprec); ++k) r.c[k - nlo] = c[k - lo];
    return r;
  }
  KSer compact() const { return with_range(std::min(val(), prec + 1), prec); }

  KSer shifted(int m) const {
    KSer r = *this;
    r.lo += m;
    r.prec += m;
    return r;
  }
  KSer scaled(const RatFunc& a) const {
    KSer r = *this;
    for (auto& x : r.c) x = x * a;
    return r;
  }

  friend KSer operator+(const KSer& a, const KSer& b) {
    int p = std::min(a.prec, b.prec), l = std::min(a.lo, b.lo);
    KSer r(l, p);
    for (int k = l; k <= p; ++k) r.c[k - l] = a.at(k) + b.at(k);
    return r;
  }
  KSer operator-() const {
    KSer r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend KSer operator-(const KSer& a, const KSer& b) { return a + (-b); }
  friend KSer operator*(const KSer& a, const KSer& b) {
    int va = a.val(), vb = b.val();
    int p = std::min(a.prec + std::min(vb, b.prec + 1), b.prec + std::min(va, a.prec + 1));
    int l = std::min(va + vb, p + 1);
    KSer r(l, p);
    for (int i = va; i <= a.prec; ++i) {
      const RatFunc& x = a.c[i - a.lo];
      if (x.is_zero()) continue;
      for (int j = vb; j <= b.prec && i + j <= p; ++j) {
        const RatFunc& y = b.c[j - b.lo];
        if (y.is_zero()) continue;
        r.c[i + j - l] = r.c[i + j - l] + x * y;
      }
    }
    return r;
  }
  friend bool operator==(const KSer& a, const KSer& b) {
    if (a.prec != b.prec) return false;
    for (int k = std::min(a.lo, b.lo); k <= a.prec; ++k)
      if (a.at(k) != b.at(k)) return false;
    return true;
  }

  // Multiplicative inverse; the valuation must be exact (leading coefficient known).
  KSer inv() const {
    int v = val();
    if (v > prec) throw std::domain_error("KSer inverse of zero");
    int n = prec - v;  // relative precision
    KSer r(-v, -v + n);
    RatFunc l = c[v - lo].inv();
    r.c[0] = l;
    for (int k = 1; k <= n; ++k) {
      RatFunc s;
      for (int j = 1; j <= k; ++j) {
        const RatFunc& a = c[v + j - lo];
        if (!a.is_zero()) s = s + a * r.c[k - j];
      }
      r.c[k] = -s * l;
    }
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const KSer& s) {
    bool any = false;
    for (int k = s.lo; k <= s.prec; ++k) {
      if (s.c[k - s.lo].is_zero()) continue;
      if (any) os << " + ";
      os << s.c[k - s.lo] << "*t^" << k;
      any = true;
    }
    if (!any) os << "0";
    return os << " + O(t^" << s.prec + 1 << ")";
  }
};

inline KSer chart_of(const TruncatedSeries& f) {
  KSer r(0, f.cap());
  for (int k = 0; k <= f.cap(); ++k)
    if (!f[k].is_zero()) r.c[k] = RatFunc(dehomogenize(f[k]));
  return r;
}

inline RatFunc chart_of(const HPoly& p) { return RatFunc(dehomogenize(p)); }

// Inverse of chart_of when all coefficients are polynomials in w of degree <= k.
inline TruncatedSeries series_of_chart(const KSer& s, int nvars) {
  TruncatedSeries f(nvars, s.prec);
  for (int k = s.lo; k <= s.prec; ++k) {
    const RatFunc r = s.at(k);
    if (r.is_zero()) continue;
    if (k < 0 || r.den().deg() > 0) throw std::invalid_argument("chart element is not a series");
    f.set_component(homogenize(r.num(), k, nvars));
  }
  return f;
}

}  // namespace pf
