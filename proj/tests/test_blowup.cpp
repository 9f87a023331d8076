#include <gtest/gtest.h>

#include <set>

#include "test_util.hpp"

using namespace pft;

namespace {

TruncatedSeries reassemble(const PointCertificate& pc) {
  const int cap = pc.unit.cap() + pc.exponents[0] + pc.exponents[1];
  auto mono = s_monomial(2, cap, ex({pc.exponents[0], pc.exponents[1]}));
  return (mono * pc.factor * pc.unit).truncated(pc.unit.cap());
}

void check_certificates(const Resolution& r) {
  ASSERT_TRUE(r.ok());
  for (auto& pc : r.cert) {
    const auto& g = r.tree.nodes[pc.node].total;
    EXPECT_EQ(reassemble(pc), g.truncated(pc.unit.cap()));
    EXPECT_FALSE(pc.unit_constant().is_zero());
  }
}

PhElem ph(const std::string& h, int alpha, int beta, int cap, const std::vector<std::string>& a) {
  std::vector<HPoly> num;
  for (auto& s : a) num.push_back(s.empty() ? HPoly(2, 0) : hp(s, 2));
  return PhElem(hp(h, 2), alpha, beta, 0, cap, num);
}

mpz_class binom(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

TEST(StrictTransform, CuspFreeChart) {
  auto st = strict_transform(series("x2^2-x1^3", 2, 10), Chart::free_at(gq(0)));
  EXPECT_EQ(st.m, 2);
  EXPECT_EQ(st.f, series("x2^2-x1", 2, 8));
}

TEST(StrictTransform, LineAndConjugatePair) {
  auto line = strict_transform(series("x2", 2, 6), Chart::free_at(gq(0)));
  EXPECT_EQ(line.m, 1);
  EXPECT_EQ(line.f, series("x2", 2, 5));
  auto pair = strict_transform(series("x1^2+x2^2", 2, 6), Chart::free_at(gq(0)));
  EXPECT_EQ(pair.m, 2);
  EXPECT_EQ(pair.f, series("1+x2^2", 2, 4));
  auto r = roots_qi(dehomogenize(hp("x1^2+x2^2", 2)));
  EXPECT_EQ(r.size(), 2u);
}

TEST(StrictTransform, TranslatedFreeChart) {
  // x2 - x1 at w0 = 1: v (w + 1) - v = v w
  auto st = strict_transform(series("x2-x1+x1^3", 2, 8), Chart::free_at(gq(1)));
  EXPECT_EQ(st.m, 1);
  EXPECT_EQ(st.f, series("x2+x1^2", 2, 7));
}

TEST(StrictTransform, CornerChartFactorsBothCoordinates) {
  auto st = strict_transform(series("x2^2-x1^3", 2, 12), Chart::corner_at(1));
  EXPECT_EQ(st.m, 2);
  EXPECT_EQ(st.mw, 3);
  EXPECT_EQ(st.f, series("x2-x1", 2, 7));
}

TEST(StrictTransform, Errors) {
  EXPECT_THROW(strict_transform(TruncatedSeries(2, 5), Chart::free_at(gq(0))), ZeroUpToCap);
  EXPECT_THROW(strict_transform(series("x1", 3, 5), Chart::free_at(gq(0))), VariableMismatch);
}

TEST(StrictTransform, Multiplicativity) {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 20; ++it) {
    auto f = rand_series(rng, 2, 10, 4, 1);
    auto g = rand_series(rng, 2, 10, 4, 1);
    if (f.is_zero() || g.is_zero()) continue;
    Chart ch = it % 2 ? Chart::free_at(rand_gauss(rng)) : Chart::corner_at(it % 3);
    auto sf = strict_transform(f, ch), sg = strict_transform(g, ch), sfg = strict_transform(f * g, ch);
    EXPECT_EQ(sfg.m, sf.m + sg.m);
    EXPECT_EQ(sfg.mw, sf.mw + sg.mw);
    auto prod = sf.f * sg.f;
    const int c = std::min(prod.cap(), sfg.f.cap());
    EXPECT_EQ(prod.truncated(c), sfg.f.truncated(c));
  }
}

TEST(Monomialize, NormalCrossingsNeedNothing) {
  auto r = monomialize_discriminant(series("x1*x2", 2, 12));
  EXPECT_EQ(r.tree.blowups, 0);
  ASSERT_EQ(r.cert.size(), 1u);
  EXPECT_EQ(r.cert[0].exponents, (std::array<int, 2>{1, 1}));
  EXPECT_EQ(r.tree.nodes[0].chart.kind, ChartKind::origin);
  check_certificates(r);
}

TEST(Monomialize, CuspThreeBlowups) {
  auto r = monomialize_discriminant(series("x2^2-x1^3", 2, 12));
  EXPECT_EQ(r.tree.blowups, 3);
  check_certificates(r);
  std::set<std::array<int, 2>> exps;
  for (auto& pc : r.cert) exps.insert(pc.exponents);
  // fiber points of the last blow-up: the two corners and the point where the strict transform crosses
  EXPECT_EQ(exps, (std::set<std::array<int, 2>>{{6, 3}, {6, 1}, {2, 6}}));
  bool corner2 = false;
  for (auto& n : r.tree.nodes)
    if (n.chart.kind == ChartKind::corner && n.chart.c == 2) {
      corner2 = true;
      EXPECT_EQ(n.total, series("x1^2*x2^6-x1^3*x2^6", 2, 12));
    }
  EXPECT_TRUE(corner2);
}

TEST(Monomialize, ThreeLinesOneBlowup) {
  auto r = monomialize_discriminant(series("x1*(x2-x1)*(x2+x1)", 2, 10));
  EXPECT_EQ(r.tree.blowups, 1);
  EXPECT_EQ(r.cert.size(), 3u);
  check_certificates(r);
  std::vector<GaussRational> w0s;
  for (auto& pc : r.cert) {
    auto& n = r.tree.nodes[pc.node];
    if (n.chart.kind == ChartKind::free) w0s.push_back(n.chart.w0);
  }
  ASSERT_EQ(w0s.size(), 2u);
  EXPECT_TRUE((w0s[0] == gq(1) && w0s[1] == gq(-1)) || (w0s[0] == gq(-1) && w0s[1] == gq(1)));
}

TEST(Monomialize, HigherCusps) {
  auto r = monomialize_discriminant(series("x2^2-x1^5", 2, 30));
  EXPECT_EQ(r.tree.blowups, 4);
  check_certificates(r);
  auto t = monomialize_discriminant(series("(x2^2-x1^3)*(x2-x1)", 2, 20));
  check_certificates(t);
}

TEST(Monomialize, SmoothTransverseBranchIsStraightened) {
  auto r = monomialize_discriminant(series("x2-x1^2", 2, 10));
  EXPECT_EQ(r.tree.blowups, 0);
  ASSERT_EQ(r.cert.size(), 1u);
  EXPECT_TRUE(r.cert[0].straightened);
  check_certificates(r);
}

TEST(Monomialize, DivisorLabels) {
  auto r = monomialize_discriminant(series("x2^2-x1^5", 2, 30));
  const auto& T = r.tree;
  for (int k = 1; k <= T.blowups; ++k) {
    EXPECT_EQ(BlowupTree::label(k, k), "F_" + std::to_string(k) + "^(" + std::to_string(k) + ")");
    int born = 0;
    for (auto& n : T.nodes) {
      if (n.created_by != k) continue;
      EXPECT_TRUE(n.divisors[0] == k || n.divisors[1] == k);
      for (int j : n.divisors) EXPECT_LE(j, k);
      ++born;
    }
    EXPECT_GE(born, 1);
  }
  for (auto& n : T.nodes) {
    if (n.parent < 0) continue;
    // the old divisor through a child is one through its parent
    const auto& p = T.nodes[n.parent];
    for (int j : n.divisors)
      if (j && j != n.created_by) EXPECT_TRUE(j == p.divisors[0] || j == p.divisors[1]);
  }
  for (int id : T.fiber_points())
    for (auto& l : T.labels(id)) EXPECT_NE(l.find("^(" + std::to_string(T.blowups) + ")"), std::string::npos);
}

TEST(Monomialize, Errors) {
  EXPECT_THROW(monomialize_discriminant(series("x2^2-x1^3", 2, 12), 2), DepthExceeded);
  EXPECT_THROW(monomialize_discriminant(series("x2^2-2*x1^2", 2, 12)), FiberRootUnsupported);
  EXPECT_THROW(monomialize_discriminant(series("x2^2-x1^5", 2, 8)), PrecisionExhausted);
  EXPECT_THROW(monomialize_discriminant(TruncatedSeries(2, 4)), ZeroUpToCap);
}

TEST(PhPullback, Constant) {
  auto A = ph("1", 0, 0, 5, {"3"});
  EXPECT_EQ(ph_pullback(A, Chart::free_at(gq(2)), gq(0)), series("3", 2, 5));
}

TEST(PhPullback, PowersOverX1) {
  // a_k = x2^(2k) over x1^k: v^k (1 + w)^(2k) at w0 = 1
  const int cap = 6;
  std::vector<std::string> a;
  for (int k = 0; k <= cap; ++k) a.push_back("x2^" + std::to_string(2 * k));
  auto got = ph_pullback(ph("x1", 1, 0, cap, a), Chart::free_at(gq(0)), gq(1));
  std::vector<Term> t;
  for (int k = 0; k <= cap; ++k)
    for (int j = 0; j <= std::min(2 * k, cap - k); ++j) t.emplace_back(ex({k, j}), GaussRational(mpq_class(binom(2 * k, j))));
  EXPECT_EQ(got, TruncatedSeries::from_terms(2, cap, t));
}

TEST(PhPullback, GeometricSeries) {
  // x1^3 / (x1 + x2) at w0 = 0: v^2 / (1 + w)
  auto got = ph_pullback(ph("x1+x2", 0, 1, 8, {"", "", "x1^3"}), Chart::free_at(gq(0)), gq(0));
  std::vector<Term> t;
  for (int j = 0; j <= 6; ++j) t.emplace_back(ex({2, j}), gq(j % 2 ? -1 : 1));
  EXPECT_EQ(got, TruncatedSeries::from_terms(2, 8, t));
}

TEST(PhPullback, UnitDenominatorAgreesWithSubstitution) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 10; ++it) {
    auto f = rand_series(rng, 2, 7, 7);
    Chart ch = it % 2 ? Chart::free_at(rand_gauss(rng)) : Chart::corner_at(it % 3);
    EXPECT_EQ(ph_pullback(PhElem::from_series(f), ch, gq(0)), s_subst(f, ch.images(7)));
  }
}

TEST(PhPullback, OnStrictTransformOfH) {
  auto A = ph("x1+x2", 0, 1, 4, {"", "x1^2"});
  EXPECT_THROW(ph_pullback(A, Chart::free_at(gq(0)), gq(-1)), OnStrictTransformOfH);
  EXPECT_THROW(ph_pullback(A, Chart::free_at(gq(-1)), gq(0)), OnStrictTransformOfH);
}

TEST(PhExtends, BuiltInDivisibility) {
  // a_k = h^(k+1) b_k with h = x2 - x1, so the quotient series is sum b_k
  const int cap = 5;
  std::vector<std::string> a, b;
  for (int k = 0; k <= cap; ++k) {
    std::string bk = "x1^" + std::to_string(k) + "+x2^" + std::to_string(k);
    a.push_back("(x2-x1)^" + std::to_string(k + 1) + "*(" + bk + ")");
    b.push_back(bk);
  }
  auto A = ph("x2-x1", 1, 1, cap, a);
  auto got = ph_extends_formally(A, Chart::free_at(gq(0)), gq(1));
  ASSERT_TRUE(got.has_value());
  auto B = ph("1", 0, 0, cap, b);
  EXPECT_EQ(*got, ph_pullback(B, Chart::free_at(gq(0)), gq(1)));
  // stable under lower cap
  auto A2 = ph("x2-x1", 1, 1, cap - 2, std::vector<std::string>(a.begin(), a.end() - 2));
  auto got2 = ph_extends_formally(A2, Chart::free_at(gq(0)), gq(1));
  ASSERT_TRUE(got2.has_value());
  EXPECT_EQ(*got2, got->truncated(cap - 2));
}

TEST(PhExtends, ConstantNotDivisible) {
  auto A = ph("x2-x1", 0, 1, 3, {"x1"});
  EXPECT_FALSE(ph_extends_formally(A, Chart::free_at(gq(0)), gq(1)).has_value());
}

TEST(PhExtends, PartialDivisibilityFails) {
  // a_1 carries only one factor of h where two are needed
  auto A = ph("x2-x1", 1, 1, 3, {"x2-x1", "(x2-x1)*x1^2"});
  EXPECT_FALSE(ph_extends_formally(A, Chart::free_at(gq(0)), gq(1)).has_value());
  auto B = ph("x2-x1", 1, 1, 3, {"x2-x1", "(x2-x1)^2*x1"});
  EXPECT_TRUE(ph_extends_formally(B, Chart::free_at(gq(0)), gq(1)).has_value());
}

TEST(PhExtends, CancellingFactorAgainstDirectExpansion) {
  // x2 (x1 + x2) / (x1 + x2) extends across the zero of x1 + x2, x1 x2 / (x1 + x2) does not
  auto good = ph("x1+x2", 0, 1, 4, {"", "x2*(x1+x2)"});
  auto ext = ph_extends_formally(good, Chart::free_at(gq(0)), gq(-1));
  ASSERT_TRUE(ext.has_value());
  EXPECT_EQ(*ext, s_subst(series("x2", 2, 4), Chart::free_at(gq(-1)).images(4)));
  auto bad = ph("x1+x2", 0, 1, 4, {"", "x1*x2"});
  EXPECT_FALSE(ph_extends_formally(bad, Chart::free_at(gq(0)), gq(-1)).has_value());
}
