#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace pft;

namespace {

UPoly up(std::initializer_list<long> c) {
  std::vector<GaussRational> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(v);
}

bool same_vg(const VGammaElem& a, const VGammaElem& b) {
  if (a.conj != b.conj || a.A.size() != b.A.size()) return false;
  for (std::size_t k = 0; k < a.A.size(); ++k)
    if (!ph_equal(a.A[k], b.A[k])) return false;
  return true;
}

MonicPoly ramified(const MonicPoly& P, int e) {
  std::vector<TruncatedSeries> c;
  for (auto& a : P.coeffs) c.push_back(detail::ramify_series(a, e));
  return MonicPoly(c);
}

MonicPoly product_of(const std::vector<RamifiedSeries>& roots) {
  MonicPoly Q = linear_factor(roots[0].base);
  for (std::size_t i = 1; i < roots.size(); ++i) Q = Q * linear_factor(roots[i].base);
  return Q;
}

}  // namespace

TEST(Npe, CorpusProductIdentity) {
  ASSERT_GE(factor_corpus().size(), 30u);
  for (auto& e : factor_corpus()) {
    auto P = monic(e.expr, e.nvars, e.cap);
    ASSERT_LE(P.degY(), 4);
    auto F = npe_factor(P, e.cap);
    EXPECT_EQ(npe_product(F, e.nvars), P.truncated(e.cap)) << e.expr;
    std::size_t count = 0;
    for (auto& o : F.orbits) count += o.size();
    EXPECT_EQ(count, F.roots.size()) << e.expr;
    EXPECT_EQ(static_cast<int>(F.roots.size()), P.degY()) << e.expr;
  }
}

TEST(Npe, RootValuations) {
  for (auto& e : factor_corpus()) {
    auto P = monic(e.expr, e.nvars, e.cap);
    auto F = npe_factor(P, e.cap);
    for (auto& r : F.roots) {
      auto v = vg_valuation(r);
      if (v) EXPECT_GE(*v, 0) << e.expr;
    }
    if (!P.a(1).is_zero() || P.degY() < 2) continue;
    // selected slope: min nu(a_k)/k is attained by some root
    std::optional<mpq_class> slope;
    for (int k = 2; k <= P.degY(); ++k) {
      auto o = s_order(P.a(k));
      if (!o) continue;
      mpq_class s(*o, k);
      s.canonicalize();
      if (!slope || s < *slope) slope = s;
    }
    ASSERT_TRUE(slope.has_value());
    bool hit = false;
    for (auto& r : F.roots) {
      auto v = vg_valuation(r);
      hit = hit || (v && *v == *slope);
    }
    EXPECT_TRUE(hit) << e.expr;
  }
}

TEST(Npe, TwoLinearFactors) {
  auto P = monic("(y-x1)*(y-x2)", 2, 8);
  auto F = npe_factor(P, 8);
  EXPECT_TRUE(F.gamma.is_trivial());
  ASSERT_EQ(F.orbits.size(), 2u);
  EXPECT_EQ(F.orbits[0].size(), 1u);
  std::vector<TruncatedSeries> got;
  for (auto& r : F.roots) got.push_back(series_of_chart(r.A[0].chart().with_range(0, 8), 2));
  auto x1 = series("x1", 2, 8), x2 = series("x2", 2, 8);
  EXPECT_TRUE((got[0] == x1 && got[1] == x2) || (got[0] == x2 && got[1] == x1));
}

TEST(Npe, SquareRootOfProduct) {
  auto P = monic("y^2-x1*x2", 2, 8);
  auto F = npe_factor(P, 8);
  EXPECT_EQ(F.gamma.degree(), 2);
  EXPECT_EQ(F.gamma.omega, mpq_class(1));
  EXPECT_EQ(F.gamma.radicand(), hp("x1*x2", 2));
  ASSERT_EQ(F.orbits.size(), 1u);
  ASSERT_EQ(F.orbits[0].size(), 2u);
  // roots +-gamma; squaring gives x1 x2
  for (auto& r : F.roots) {
    EXPECT_TRUE(r.A[0].is_zero());
    auto c = r.A[1].chart();
    auto v = r.A[1].valuation();
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(*v, 0);
    RatFunc a = c.at(0);
    EXPECT_TRUE(a == RatFunc(1) || a == RatFunc(-1));
  }
  EXPECT_FALSE(ph_equal(F.roots[0].A[1], F.roots[1].A[1]));
}

TEST(Npe, QuadraticClosedForm) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 8; ++t) {
    auto [P1, P0] = random_quadratic(rng, 12);
    auto F = npe_factor(MonicPoly({P1, P0}), 12);
    std::string why;
    EXPECT_TRUE(deg2_formula_matches(P1, P0, F, &why)) << why << " P1=" << P1 << " P0=" << P0;
  }
}

TEST(Npe, QuadraticClosedFormFixed) {
  for (const char* s : {"y^2+x1*y+x2^3", "y^2-x1^3*(1+x2)", "y^2-(2+i)*x1^2*x2+x1^5", "y^2+(x1+x2)*y+x1*x2^2"}) {
    auto P = monic(s, 2, 12);
    auto F = npe_factor(P, 12);
    std::string why;
    EXPECT_TRUE(deg2_formula_matches(P.a(1), P.a(2), F, &why)) << s << ": " << why;
  }
}

TEST(Npe, NotReduced) {
  EXPECT_THROW(npe_factor(monic("(y-x1)^2", 2, 8), 8), NotReduced);
  EXPECT_THROW(npe_factor(monic("y^4-x1*x2^3", 2, 8), 8), NotReduced);
}

TEST(Npe, OrbitClosure) {
  for (auto& e : factor_corpus()) {
    auto F = npe_factor(monic(e.expr, e.nvars, e.cap), e.cap);
    if (!F.gamma.pure || 4 % F.gamma.degree() != 0) continue;
    for (auto& orbit : F.orbits)
      for (int i : orbit)
        for (int j = 1; j < F.gamma.degree(); ++j) {
          auto c = gamma_conjugate(F.roots[i], j);
          bool found = false;
          for (int k : orbit) found = found || same_vg(c, F.roots[k]);
          EXPECT_TRUE(found) << e.expr << " root " << i << " conj " << j;
        }
  }
}

TEST(Npe, SymbolicOrbitProductDescends) {
  auto P = monic("y^3-x1*x2^2", 2, 10);
  auto F = npe_factor(P, 10);
  EXPECT_EQ(F.gamma.degree(), 3);
  EXPECT_EQ(npe_product(F, 2), P);
}

TEST(Hensel, SquareRootOfUnit) {
  const int cap = 9;
  auto Q = monic("y^2-(1+x1)", 2, cap);
  auto [Q1, Q2] = hensel_lift(Q, up({-1, 1}), up({1, 1}), cap);
  auto s = s_root_unit(series("1+x1", 2, cap), 2);
  EXPECT_EQ(Q1.a(1), -s);
  EXPECT_EQ(Q2.a(1), s);
  EXPECT_EQ(Q1 * Q2, Q);
}

TEST(Hensel, ConstantSplitUnchanged) {
  auto Q = monic("(y-1)*(y+2)*(y-i)", 2, 6);
  auto [Q1, Q2] = hensel_lift(Q, up({-1, 1}), up({2, 1}) * UPoly(std::vector<GaussRational>{-GaussRational::I(), gq(1)}), 6);
  EXPECT_EQ(Q1, monic("y-1", 2, 6));
  EXPECT_EQ(Q2, monic("(y+2)*(y-i)", 2, 6));
}

TEST(Hensel, Errors) {
  auto Q = monic("y^2+x1", 2, 6);
  EXPECT_THROW(hensel_lift(Q, up({0, 1}), up({0, 1}), 6), NotCoprime);
  EXPECT_THROW(hensel_lift(monic("y^2-1-x1", 2, 6), up({-1, 1}), up({2, 1}), 6), NotCoprime);
}

TEST(Hensel, RandomLifts) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const int cap = 6;
    UPoly R1 = up({-1, 1}) * up({0, 1}), R2 = up({2, 1});
    if (t % 2) R2 = R2 * up({1, 0, 1});
    auto perturb = [&](const UPoly& R) {
      std::vector<TruncatedSeries> c;
      for (int j = 0; j <= R.deg(); ++j) {
        auto s = TruncatedSeries::constant(2, cap, R.coeff(j));
        if (j < R.deg()) s = s + rand_series(rng, 2, cap, 4, 1, 0.4);
        c.push_back(s);
      }
      return MonicPoly::from_y_coeffs(c);
    };
    MonicPoly Q = perturb(R1) * perturb(R2);
    auto [Q1, Q2] = hensel_lift(Q, R1, R2, cap);
    EXPECT_EQ(Q1 * Q2, Q);
    EXPECT_EQ(residue_poly(Q1), R1);
    EXPECT_EQ(residue_poly(Q2), R2);
  }
}

TEST(AbhyankarJung, SquareRootOfProduct) {
  auto P = monic("y^2-x1*x2", 2, 12);
  auto r = aj_roots(P, 10);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].ram, 2);
  auto base = series("x1*x2", 2, r[0].base.cap());
  for (auto& x : r) EXPECT_EQ(s_mul(x.base, x.base), s_mul(base, base));
  EXPECT_EQ(r[0].base + r[1].base, TruncatedSeries(2, r[0].base.cap()));
}

TEST(AbhyankarJung, NonMonomialDiscriminant) {
  EXPECT_THROW(aj_roots(monic("y^4-(x1^2+x2^2)", 2, 12), 10), NotQuasiOrdinary);
}

TEST(AbhyankarJung, QuarticAfterBlowup) {
  const int cap = 10;
  auto P = monic("y^4-x1^2*(1+x2^2)", 2, cap + 2);
  auto r = aj_roots(P, cap);
  ASSERT_EQ(r.size(), 4u);
  const int e = r[0].ram;
  EXPECT_EQ(e, 2);
  const int bc = r[0].base.cap();
  EXPECT_GE(bc, e * cap);
  // oracle: +-t1 (1 + t2^4)^(1/4), +-i t1 (1 + t2^4)^(1/4)
  auto q = s_mul(series("x1", 2, bc), s_root_unit(series("1+x2^4", 2, bc), 4));
  std::vector<TruncatedSeries> want{q, -q, q.scaled(GaussRational::I()), q.scaled(-GaussRational::I())};
  for (auto& w : want) {
    int hits = 0;
    for (auto& x : r) hits += x.base == w;
    EXPECT_EQ(hits, 1);
  }
  EXPECT_EQ(product_of(r), ramified(P, e).truncated(bc));
}

TEST(AbhyankarJung, RamificationDividesFactorial) {
  for (const char* s : {"y^2-x1*x2", "y^2-x1^3", "y^4-x1*x2^3", "(y-x1)*(y^2-x1^3)", "y^2-x1^2-x1^3"}) {
    auto P = monic(s, 2, 16);
    auto r = aj_roots(P, 8);
    int d = P.degY(), f = 1;
    for (int k = 2; k <= d; ++k) f *= k;
    EXPECT_EQ(f % r[0].ram, 0) << s;
    if (d == 2) EXPECT_EQ(2 % r[0].ram, 0) << s;
    int bc = r[0].base.cap();
    EXPECT_EQ(product_of(r), ramified(P, r[0].ram).truncated(bc)) << s;
  }
}

TEST(AbhyankarJung, MatchRoot) {
  auto P = monic("y^2-x1*x2", 2, 12);
  Morphism phi({series("x1^2", 2, 12), series("x2^2", 2, 12), series("x1*x2", 2, 12)});
  auto m = match_root(P, phi);
  auto roots = aj_roots(P, P.cap());
  EXPECT_EQ(roots[m.index].base.coeff(ex({1, 1})), gq(1));
  ASSERT_EQ(m.residual.size(), 2u);
  EXPECT_EQ(m.residual[1 - m.index], 2);

  Morphism neg({series("x1^2", 2, 12), series("x2^2", 2, 12), series("-x1*x2", 2, 12)});
  auto m2 = match_root(P, neg);
  EXPECT_EQ(roots[m2.index].base.coeff(ex({1, 1})), gq(-1));

  Morphism off({series("x1^2", 2, 12), series("x2^2", 2, 12), series("x1*x2+x1^8", 2, 12)});
  EXPECT_THROW(match_root(P, off), NoMatch);
}
