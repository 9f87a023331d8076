#pragma once

#include <map>
#include <utility>

#include "upoly.hpp"
#include "weierstrass.hpp"

namespace pf {

// Residue of Q modulo the maximal ideal: Q(0, y).
inline UPoly residue_poly(const MonicPoly& Q) {
  std::vector<GaussRational> c;
  for (int j = 0; j <= Q.degY(); ++j) c.push_back(Q.coeff_y(j).constant_term());
  return UPoly(std::move(c));
}

// Lift a coprime split Q(0, y) = R1 R2 to Q = Q1 Q2 through total degree cap.
inline std::pair<MonicPoly, MonicPoly> hensel_lift(const MonicPoly& Q, const UPoly& R1, const UPoly& R2, int cap) {
  if (R1.deg() < 1 || R2.deg() < 1) throw std::invalid_argument("hensel_lift: factors must have positive degree");
  if (!R1.lc().is_one() || !R2.lc().is_one()) throw std::invalid_argument("hensel_lift: factors must be monic");
  auto [g, s, t] = ext_gcd(R1, R2);
  if (g.deg() != 0) throw NotCoprime("residue factors share a common factor");
  if (R1 * R2 != residue_poly(Q)) throw NotCoprime("residue factors do not multiply to Q mod m");
  cap = std::min(cap, Q.cap());
  const int n = Q.nvars(), d1 = R1.deg(), d2 = R2.deg();

  // comp[j][k]: degree-k component of the y^j coefficient
  using Comps = std::vector<std::vector<HPoly>>;
  auto init = [&](const UPoly& R, int dg) {
    Comps c(dg + 1, std::vector<HPoly>(cap + 1, HPoly(n, 0)));
    for (int j = 0; j <= dg; ++j) {
      c[j][0] = HPoly::constant(n, R.coeff(j));
      for (int k = 1; k <= cap; ++k) c[j][k] = HPoly(n, k);
    }
    return c;
  };
  Comps A = init(R1, d1), B = init(R2, d2);

  for (int k = 1; k <= cap; ++k) {
    // error E_k(y) = [Q - A B]_k, grouped by monomial
    std::map<Exp, std::vector<GaussRational>> err;
    auto add = [&](const HPoly& p, int j, bool neg) {
      for (auto& [e, c] : p.terms()) {
        auto& v = err[e];
        if (v.empty()) v.assign(d1 + d2 + 1, GaussRational(0));
        v[j] = neg ? v[j] - c : v[j] + c;
      }
    };
    for (int j = 0; j <= d1 + d2; ++j) add(Q.coeff_y(j)[k], j, false);
    for (int i = 0; i <= d1; ++i)
      for (int j = 0; j <= d2; ++j)
        for (int a = 0; a <= k; ++a) {
          const HPoly& p = A[i][a];
          const HPoly& q = B[j][k - a];
          if (p.is_zero() || q.is_zero()) continue;
          add(p * q, i + j, true);
        }
    for (auto& [e, v] : err) {
      UPoly E(v);
      if (E.is_zero()) continue;
      // E = R2 U + R1 V with deg U < d1, deg V < d2
      UPoly U = (E * t) % R1;
      UPoly V = divmod(E - R2 * U, R1).first;
      for (int j = 0; j <= U.deg(); ++j)
        if (!U.coeff(j).is_zero()) A[j][k] += HPoly::monomial(n, e, U.coeff(j));
      for (int j = 0; j <= V.deg(); ++j)
        if (!V.coeff(j).is_zero()) B[j][k] += HPoly::monomial(n, e, V.coeff(j));
    }
  }
  auto build = [&](const Comps& c, int dg) {
    std::vector<TruncatedSeries> co;
    for (int j = 0; j <= dg; ++j) {
      TruncatedSeries s(n, cap);
      for (int k = 0; k <= cap; ++k) s.component(k) = c[j][k];
      co.push_back(s);
    }
    return MonicPoly::from_y_coeffs(co);
  };
  return {build(A, d1), build(B, d2)};
}

}  // namespace pf
