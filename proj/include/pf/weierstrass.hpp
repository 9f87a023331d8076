#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "berkowitz.hpp"
#include "series.hpp"

namespace pf {

// Monic polynomial y^d + a1 y^(d-1) + ... + ad with series coefficients.
struct MonicPoly {
  std::vector<TruncatedSeries> coeffs;  // a1..ad

  MonicPoly() = default;
  explicit MonicPoly(std::vector<TruncatedSeries> a) : coeffs(std::move(a)) {
    if (coeffs.empty()) throw std::invalid_argument("monic polynomial of degree 0");
    for (auto& c : coeffs)
      if (c.nvars() != coeffs[0].nvars()) throw VariableMismatch("monic coefficients");
    int cap = coeffs[0].cap();
    for (auto& c : coeffs) cap = std::min(cap, c.cap());
    for (auto& c : coeffs) c = c.truncated(cap);
  }

  int degY() const { return static_cast<int>(coeffs.size()); }
  int nvars() const { return coeffs[0].nvars(); }
  int cap() const { return coeffs[0].cap(); }
  const TruncatedSeries& a(int k) const { return coeffs.at(k - 1); }

  // Coefficient of y^j, j = 0..d.
  TruncatedSeries coeff_y(int j) const {
    int d = degY();
    if (j == d) return TruncatedSeries::constant(nvars(), cap(), GaussRational(1));
    return coeffs.at(d - j - 1);
  }

  static MonicPoly from_y_coeffs(const std::vector<TruncatedSeries>& c) {
    int d = static_cast<int>(c.size()) - 1;
    std::vector<TruncatedSeries> a;
    for (int k = 1; k <= d; ++k) a.push_back(c[d - k]);
    return MonicPoly(std::move(a));
  }

  MonicPoly truncated(int cap) const {
    std::vector<TruncatedSeries> a;
    for (auto& c : coeffs) a.push_back(c.truncated(cap));
    return MonicPoly(std::move(a));
  }

  TruncatedSeries evaluate(const TruncatedSeries& y) const {
    TruncatedSeries r = TruncatedSeries::constant(nvars(), std::min(cap(), y.cap()), GaussRational(1));
    for (auto& c : coeffs) r = s_mul(r, y) + c;
    return r;
  }

  friend bool operator==(const MonicPoly& p, const MonicPoly& q) { return p.coeffs == q.coeffs; }

  friend MonicPoly operator*(const MonicPoly& p, const MonicPoly& q) {
    int dp = p.degY(), dq = q.degY();
    int cap = std::min(p.cap(), q.cap());
    std::vector<TruncatedSeries> c(dp + dq + 1, TruncatedSeries(p.nvars(), cap));
    for (int i = 0; i <= dp; ++i)
      for (int j = 0; j <= dq; ++j) c[i + j] += s_mul(p.coeff_y(i), q.coeff_y(j));
    return from_y_coeffs(c);
  }
};

inline MonicPoly linear_factor(const TruncatedSeries& root) { return MonicPoly({-root}); }

namespace detail {

using SparseMap = std::map<Exp, GaussRational>;

inline void add_product(SparseMap& acc, const std::vector<Term>& a, const std::vector<Term>& b, bool negate) {
  for (auto& ta : a)
    for (auto& tb : b) {
      GaussRational c = ta.second * tb.second;
      auto [it, fresh] = acc.try_emplace(exp_add(ta.first, tb.first), GaussRational(0));
      if (negate) it->second -= c;
      else it->second += c;
    }
}

}  // namespace detail

struct DivisionResult {
  TruncatedSeries q;
  TruncatedSeries r;
  int d = 0;
};

// Order of g(0,..,0,xn) or nullopt if it vanishes up to cap.
inline std::optional<int> regular_order(const TruncatedSeries& g) {
  int n = g.nvars();
  for (int j = 0; j <= g.cap(); ++j) {
    Exp e{};
    e[n - 1] = static_cast<std::uint8_t>(j);
    if (!g.coeff(e).is_zero()) return j;
  }
  return std::nullopt;
}

// Weierstrass division f = q g + r with deg_{xn} r < d. Truncated inputs are read as exact
// polynomials; the weighted recurrence (xn weight 1, other variables weight d+1) produces q and r
// exactly through total degree cap.
inline DivisionResult w_division(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.nvars() != g.nvars()) throw VariableMismatch("w_division");
  const int n = g.nvars();
  const int cap = std::min(f.cap(), g.cap());
  auto ord = regular_order(g.truncated(cap));
  if (!ord) throw NotRegular("g(0,xn) vanishes up to cap");
  const int d = *ord;
  const int wx = d + 1;
  auto weight = [&](const Exp& e) {
    int w = e[n - 1];
    for (int i = 0; i < n - 1; ++i) w += wx * e[i];
    return w;
  };
  const int W = wx * cap + d;
  std::vector<std::vector<Term>> fw(W + 1), gw(W + 1);
  for (auto& t : f.truncated(cap).terms()) fw[weight(t.first)].push_back(t);
  for (auto& t : g.truncated(cap).terms())
    if (weight(t.first) <= W) gw[weight(t.first)].push_back(t);
  Exp xd{};
  xd[n - 1] = static_cast<std::uint8_t>(d);
  GaussRational cinv = g.coeff(xd).inv();
  std::vector<std::vector<Term>> qw(W + 1), rw(W + 1);
  for (int w = 0; w <= W; ++w) {
    detail::SparseMap s;
    for (auto& t : fw[w]) s[t.first] += t.second;
    for (int j = d + 1; j <= w; ++j)
      if (!gw[j].empty() && w - j >= 0 && !qw[w - j].empty()) detail::add_product(s, qw[w - j], gw[j], true);
    for (auto& [e, c] : s) {
      if (c.is_zero()) continue;
      if (e[n - 1] >= d) {
        Exp qe = e;
        qe[n - 1] = static_cast<std::uint8_t>(e[n - 1] - d);
        if (w - d >= 0) qw[w - d].emplace_back(qe, c * cinv);
      } else {
        rw[w].emplace_back(e, c);
      }
    }
  }
  std::vector<Term> qt, rt;
  for (auto& v : qw)
    for (auto& t : v)
      if (exp_degree(t.first, n) <= cap) qt.push_back(t);
  for (auto& v : rw)
    for (auto& t : v)
      if (exp_degree(t.first, n) <= cap) rt.push_back(t);
  return {TruncatedSeries::from_terms(n, cap, qt), TruncatedSeries::from_terms(n, cap, rt), d};
}

// Drop or insert the last variable.
inline TruncatedSeries drop_last_var(const TruncatedSeries& f) {
  int n = f.nvars();
  std::vector<Term> out;
  for (auto& t : f.terms()) {
    if (t.first[n - 1] != 0) throw std::invalid_argument("series depends on last variable");
    out.push_back(t);
  }
  return TruncatedSeries::from_terms(n - 1, f.cap(), out);
}

inline TruncatedSeries append_var(const TruncatedSeries& f) {
  return TruncatedSeries::from_terms(f.nvars() + 1, f.cap(), f.terms());
}

struct WeierstrassData {
  TruncatedSeries unit;
  MonicPoly poly;  // in x_n, coefficients in the first n-1 variables
};

// Expand a polynomial in x_n with coefficients in x' into an n-variable series.
inline TruncatedSeries poly_in_last_var(const MonicPoly& P, int cap) {
  int d = P.degY();
  int n = P.nvars() + 1;
  TruncatedSeries r(n, cap);
  for (int j = 0; j <= d; ++j) {
    Exp e{};
    e[n - 1] = static_cast<std::uint8_t>(j);
    TruncatedSeries c = append_var(P.coeff_y(j)).truncated(std::min(cap, P.cap()));
    TruncatedSeries full(n, cap);
    for (auto& t : c.terms()) {
      Exp te = exp_add(t.first, e);
      if (exp_degree(te, n) <= cap) full += s_monomial(n, cap, te, t.second);
    }
    r += full;
  }
  return r;
}

inline WeierstrassData w_preparation(const TruncatedSeries& f) {
  const int n = f.nvars();
  auto ord = regular_order(f);
  if (!ord) throw NotRegular("f(0,xn) vanishes up to cap");
  int d = *ord;
  if (d > f.cap()) throw NotRegular("order exceeds cap");
  Exp xd{};
  xd[n - 1] = static_cast<std::uint8_t>(d);
  auto dr = w_division(s_monomial(n, f.cap(), xd), f);
  TruncatedSeries unit = s_inv_unit(dr.q);
  std::vector<TruncatedSeries> a(d, TruncatedSeries(n - 1, f.cap()));
  for (auto& t : dr.r.terms()) {
    int j = t.first[n - 1];
    Exp e = t.first;
    e[n - 1] = 0;
    a[d - j - 1] += s_monomial(n - 1, f.cap(), e, -t.second);
  }
  if (d == 0) return {unit, MonicPoly()};
  return {unit, MonicPoly(std::move(a))};
}

// Sylvester matrix of two polynomials given by coefficient lists (descending degree).
inline std::vector<std::vector<TruncatedSeries>> sylvester(const std::vector<TruncatedSeries>& p,
                                                           const std::vector<TruncatedSeries>& q, int nvars,
                                                           int cap) {
  int m = static_cast<int>(p.size()) - 1, n = static_cast<int>(q.size()) - 1;
  int N = m + n;
  std::vector<std::vector<TruncatedSeries>> S(N, std::vector<TruncatedSeries>(N, TruncatedSeries(nvars, cap)));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) S[r][r + j] = p[j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) S[n + r][r + j] = q[j];
  return S;
}

inline std::vector<TruncatedSeries> descending(const MonicPoly& P) {
  std::vector<TruncatedSeries> c;
  for (int j = P.degY(); j >= 0; --j) c.push_back(P.coeff_y(j));
  return c;
}

inline TruncatedSeries resultant(const MonicPoly& P, const MonicPoly& Q) {
  int cap = std::min(P.cap(), Q.cap());
  auto S = sylvester(descending(P.truncated(cap)), descending(Q.truncated(cap)), P.nvars(), cap);
  return berkowitz_det(S, TruncatedSeries(P.nvars(), cap), TruncatedSeries::constant(P.nvars(), cap, GaussRational(1)));
}

// Discriminant (-1)^(d(d-1)/2) Res(P, P').
inline TruncatedSeries discriminant(const MonicPoly& P) {
  int d = P.degY(), n = P.nvars(), cap = P.cap();
  if (d == 1) return TruncatedSeries::constant(n, cap, GaussRational(1));
  std::vector<TruncatedSeries> dp;
  for (int j = d; j >= 1; --j) dp.push_back(P.coeff_y(j).scaled(GaussRational(static_cast<long>(j))));
  auto S = sylvester(descending(P), dp, n, cap);
  TruncatedSeries r = berkowitz_det(S, TruncatedSeries(n, cap), TruncatedSeries::constant(n, cap, GaussRational(1)));
  return (d * (d - 1) / 2) % 2 ? -r : r;
}

inline mpz_class binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// P(y - s) expanded.
inline MonicPoly shift_poly(const MonicPoly& P, const TruncatedSeries& s) {
  int d = P.degY(), n = P.nvars(), cap = std::min(P.cap(), s.cap());
  std::vector<TruncatedSeries> out(d + 1, TruncatedSeries(n, cap));
  std::vector<TruncatedSeries> spow{TruncatedSeries::constant(n, cap, GaussRational(1))};
  for (int k = 1; k <= d; ++k) spow.push_back(s_mul(spow.back(), -s.truncated(cap)));
  for (int j = 0; j <= d; ++j) {
    TruncatedSeries cj = P.coeff_y(j).truncated(cap);
    for (int i = 0; i <= j; ++i)
      out[i] += s_mul(cj, spow[j - i]).scaled(GaussRational(mpq_class(binomial(j, i))));
  }
  return MonicPoly::from_y_coeffs(out);
}

struct TschirnhausResult {
  MonicPoly poly;
  TruncatedSeries shift;
};

inline TschirnhausResult tschirnhaus(const MonicPoly& P) {
  TruncatedSeries s = P.a(1).scaled(GaussRational(mpq_class(1, P.degY())));
  return {shift_poly(P, s), s};
}

struct MonomialUnit {
  Exp alpha{};
  TruncatedSeries unit;
};

inline TruncatedSeries shift_by_monomial(const TruncatedSeries& u, const Exp& a) {
  int n = u.nvars();
  int cap = u.cap() + exp_degree(a, n);
  std::vector<Term> out;
  for (auto& t : u.terms()) out.emplace_back(exp_add(t.first, a), t.second);
  return TruncatedSeries::from_terms(n, cap, out);
}

// f = x^alpha * unit in the given coordinates; the unit is reported at cap - |alpha|.
inline std::optional<MonomialUnit> is_monomial_unit(const TruncatedSeries& f) {
  auto terms = f.terms();
  if (terms.empty()) throw ZeroUpToCap("is_monomial_unit");
  int n = f.nvars();
  Exp a = terms[0].first;
  for (auto& t : terms)
    for (int i = 0; i < n; ++i) a[i] = std::min(a[i], t.first[i]);
  if (f.coeff(a).is_zero()) return std::nullopt;
  int da = exp_degree(a, n);
  std::vector<Term> u;
  for (auto& t : terms)
    if (exp_degree(t.first, n) - da <= f.cap() - da) u.emplace_back(exp_sub(t.first, a), t.second);
  return MonomialUnit{a, TruncatedSeries::from_terms(n, f.cap() - da, u)};
}

}  // namespace pf
