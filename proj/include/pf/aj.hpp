#pragma once

#include <numeric>
#include <optional>

#include "hensel.hpp"
#include "morphism.hpp"

namespace pf {

namespace detail {

struct NeedRamification {
  int q;
};

// x_i -> x_i^e; the image is known through degree e (cap + 1) - 1.
inline TruncatedSeries ramify_series(const TruncatedSeries& f, int e) {
  std::vector<Term> t;
  for (auto& [x, c] : f.terms()) {
    Exp y{};
    for (int i = 0; i < f.nvars(); ++i) {
      int v = x[i] * e;
      if (v > 255) throw NotSupported("exponent overflow in ramification");
      y[i] = static_cast<std::uint8_t>(v);
    }
    t.emplace_back(y, c);
  }
  return TruncatedSeries::from_terms(f.nvars(), e * (f.cap() + 1) - 1, t);
}

// f / x^mu, known through cap - |mu|.
inline TruncatedSeries divide_monomial(const TruncatedSeries& f, const Exp& mu) {
  const int n = f.nvars(), dm = exp_degree(mu, n);
  std::vector<Term> t;
  for (auto& [x, c] : f.terms()) {
    if (!exp_divides(mu, x)) throw std::logic_error("divide_monomial: term not divisible");
    if (exp_degree(x, n) - dm <= f.cap() - dm) t.emplace_back(exp_sub(x, mu), c);
  }
  return TruncatedSeries::from_terms(n, f.cap() - dm, t);
}

// Roots of a monic Q whose roots are power series (Q quasi-ordinary after ramification).
inline std::vector<TruncatedSeries> qo_solve(const MonicPoly& Q) {
  const int d = Q.degY(), n = Q.nvars();
  if (d == 1) return {-Q.a(1)};
  auto [T, shift] = tschirnhaus(Q);

  // dominating vertex: lambda_j = min_k nu_j(a_k) / k
  std::vector<std::optional<mpq_class>> lam(n);
  for (int k = 2; k <= d; ++k)
    for (auto& [x, c] : T.a(k).terms())
      for (int j = 0; j < n; ++j) {
        mpq_class v(x[j], k);
        v.canonicalize();
        if (!lam[j] || v < *lam[j]) lam[j] = v;
      }
  if (!lam[0]) throw PrecisionExhausted("all coefficients vanish up to cap");
  Exp mu{};
  int q = 1;
  for (int j = 0; j < n; ++j) {
    long den = lam[j]->get_den().get_si();
    q = std::lcm(q, static_cast<int>(den));
    mu[j] = static_cast<std::uint8_t>(lam[j]->get_num().get_si() / den);
  }
  if (q > 1) throw NeedRamification{q};
  const int dm = exp_degree(mu, n);

  bool vertex = false;
  std::vector<TruncatedSeries> b;
  Exp kmu{};
  for (int k = 1; k <= d; ++k) {
    for (int j = 0; j < n; ++j) kmu[j] = static_cast<std::uint8_t>(k * mu[j]);
    if (k >= 2 && !T.a(k).coeff(kmu).is_zero()) vertex = true;
    if (k * dm > T.cap()) throw PrecisionExhausted("cap too small below the dominating vertex");
    b.push_back(divide_monomial(T.a(k), kmu));
  }
  if (!vertex) throw PrecisionExhausted("dominating vertex not visible at cap");
  MonicPoly B(b);

  UPoly R = residue_poly(B);
  std::vector<std::pair<GaussRational, int>> blocks;
  int found = 0;
  for (auto& c : roots_qi(R)) {
    UPoly lin(std::vector<GaussRational>{-c, GaussRational(1)});
    UPoly rest = R;
    int m = 0;
    while (rest.deg() >= 1) {
      auto [qq, r] = divmod(rest, lin);
      if (!r.is_zero()) break;
      rest = qq;
      ++m;
    }
    blocks.emplace_back(c, m);
    found += m;
  }
  if (found < d) throw BaseFieldRootMissing("residue polynomial does not split over Q(i)");

  std::vector<TruncatedSeries> z;
  MonicPoly cur = B;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    MonicPoly part = cur;
    if (i + 1 < blocks.size()) {
      auto [c, m] = blocks[i];
      UPoly R1 = UPoly(std::vector<GaussRational>{-c, GaussRational(1)}).pow(m);
      UPoly R2 = divmod(residue_poly(cur), R1).first;
      auto split = hensel_lift(cur, R1, R2, cur.cap());
      part = split.first;
      cur = split.second;
    }
    for (auto& r : qo_solve(part)) z.push_back(r);
  }
  std::vector<TruncatedSeries> y;
  for (auto& r : z) {
    TruncatedSeries s = shift_by_monomial(r, mu);
    int c = std::min(shift.cap(), s.cap());
    y.push_back(s.truncated(c) - shift.truncated(c));
  }
  return y;
}

}  // namespace detail

// Roots of a quasi-ordinary P in Q(i)[[x^(1/e)]], one RamifiedSeries per root.
inline std::vector<RamifiedSeries> aj_roots(const MonicPoly& P, int cap) {
  const int n = P.nvars(), d = P.degY();
  if (n > 2) throw NotSupported("aj_roots supports at most two variables");
  if (cap > P.cap()) throw CapTooSmall("input polynomial is known only through degree " + std::to_string(P.cap()));
  TruncatedSeries disc = discriminant(P);
  if (disc.is_zero()) throw NotReduced("discriminant vanishes up to cap");
  if (!is_monomial_unit(disc)) throw NotQuasiOrdinary("discriminant is not a monomial times a unit");
  mpz_class dfact = 1;
  for (int k = 2; k <= d; ++k) dfact *= k;
  int e = 1;
  for (;;) {
    std::vector<TruncatedSeries> coeffs;
    for (auto& a : P.coeffs) coeffs.push_back(detail::ramify_series(a, e));
    try {
      auto roots = detail::qo_solve(MonicPoly(coeffs));
      int rc = e * cap;
      for (auto& r : roots) rc = std::min(rc, r.cap());
      std::vector<RamifiedSeries> out;
      for (auto& r : roots) out.push_back({r.truncated(rc), e});
      return out;
    } catch (const detail::NeedRamification& nr) {
      e *= nr.q;
      if (dfact % e != 0) throw NotQuasiOrdinary("ramification index does not divide d!");
    }
  }
}

struct RootMatch {
  int index = -1;
  std::vector<std::optional<int>> residual;  // valuation of phi(y) - xi_i(phi(x)), none = zero up to cap
  int cap = 0;
};

// Which root xi_i of P satisfies phi(y) = xi_i(phi(x1), phi(x2)); phi maps (x1, .., xn, y).
inline RootMatch match_root(const MonicPoly& P, const Morphism& phi) {
  const int n = P.nvars();
  if (phi.n != n + 1) throw VariableMismatch("morphism must map x1..xn and y");
  auto roots = aj_roots(P, P.cap());
  const int e = roots.front().ram;
  std::vector<TruncatedSeries> t;
  for (int j = 0; j < n; ++j) {
    auto mu = is_monomial_unit(phi.phi[j]);
    if (!mu) throw NotSupported("phi(x" + std::to_string(j + 1) + ") is not a monomial times a unit");
    Exp a{};
    for (int i = 0; i < phi.m; ++i) {
      if (mu->alpha[i] % e) throw NotSupported("monomial exponent not divisible by the ramification index");
      a[i] = static_cast<std::uint8_t>(mu->alpha[i] / e);
    }
    t.push_back(shift_by_monomial(s_root_unit(mu->unit, static_cast<unsigned>(e)), a));
  }
  RootMatch out;
  const TruncatedSeries& y = phi.phi[n];
  for (std::size_t i = 0; i < roots.size(); ++i) {
    TruncatedSeries v = s_subst(roots[i].base, t);
    int c = std::min(v.cap(), y.cap());
    TruncatedSeries r = y.truncated(c) - v.truncated(c);
    out.cap = i ? std::min(out.cap, c) : c;
    out.residual.push_back(s_order(r));
    if (!out.residual.back()) {
      if (out.index >= 0) throw PrecisionExhausted("two roots match up to cap");
      out.index = static_cast<int>(i);
    }
  }
  if (out.index < 0) throw NoMatch("no root of P matches phi(y) up to cap");
  return out;
}

}  // namespace pf
