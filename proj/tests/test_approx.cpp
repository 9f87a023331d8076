#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace pft;

namespace {

std::optional<mpq_class> q(long n, long d = 1) {
  mpq_class r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(PairRoots, SquareRootPerturbation) {
  auto P = monic("y^2-x1^2", 1, 10), Q = monic("y^2-x1^2-x1^5", 1, 10);
  auto r = pair_roots(P, Q, 10);
  EXPECT_EQ(r.nu_difference, std::optional<int>(5));
  EXPECT_EQ(r.nu_discriminant, 2);
  EXPECT_EQ(r.threshold, mpq_class(5, 2));
  ASSERT_EQ(r.pair.size(), 2u);
  EXPECT_NE(r.pair[0], r.pair[1]);
  // x1 sqrt(1 + x1^3) - x1 = x1^4 / 2 + ...
  for (auto& g : r.gap) EXPECT_EQ(g, q(4));
}

TEST(PairRoots, AgreesWithRamifiedRoots) {
  auto P = monic("y^2-x1^2", 1, 10), Q = monic("y^2-x1^2-x1^5", 1, 10);
  auto a = pair_roots(P, Q, 10);
  auto b = pair_roots(P, Q, aj_roots(P, 10), aj_roots(Q, 10));
  EXPECT_EQ(b.gap, a.gap);
  auto R = monic("y^2-x1*x2", 2, 12), S = monic("y^2-x1*x2-x1^4*x2^3", 2, 12);
  auto c = pair_roots(R, S, aj_roots(R, 12), aj_roots(S, 12));
  for (auto& g : c.gap) EXPECT_EQ(g, q(6));
}

TEST(PairRoots, IdenticalPolynomials) {
  auto P = monic("(y-x1)*(y+x2)", 2, 8);
  auto r = pair_roots(P, P, 8);
  EXPECT_FALSE(r.nu_difference.has_value());
  for (std::size_t i = 0; i < r.pair.size(); ++i) {
    EXPECT_EQ(r.pair[i], static_cast<int>(i));
    EXPECT_FALSE(r.gap[i].has_value());
  }
}

TEST(PairRoots, HypothesisViolated) {
  auto P = monic("y^2-x1^2", 1, 8), Q = monic("y^2-x1^2+x1", 1, 8);
  try {
    pair_roots(P, Q, 8);
    FAIL();
  } catch (const HypothesisViolated& e) {
    EXPECT_NE(std::string(e.what()).find("2 <= "), std::string::npos);
  }
}

TEST(PairRoots, RadicalRoots) {
  auto P = monic("y^2-x1*x2", 2, 10), Q = monic("y^2-x1*x2-x1^7", 2, 10);
  auto r = pair_roots(P, Q, 10);
  EXPECT_EQ(r.threshold, mpq_class(7, 2));
  for (auto& g : r.gap) EXPECT_EQ(g, q(6));
}

TEST(PairRoots, CubeRoot) {
  // disc of y^3 - x1^2 x2 has order 6, so nu(eps) = 10 satisfies the hypothesis
  auto P = monic("y^3-x1^2*x2", 2, 12), Q = monic("y^3-x1^2*x2-x1^10", 2, 12);
  auto r = pair_roots(P, Q, 12);
  std::vector<bool> hit(3, false);
  for (int j : r.pair) hit[j] = true;
  EXPECT_EQ(hit, std::vector<bool>(3, true));
  // xi' - xi = xi ((1 + x1^8 / x2)^(1/3) - 1) has valuation 1 + 7
  for (auto& g : r.gap) EXPECT_EQ(g, q(8));
}

TEST(PairRoots, ConjugateGapMatchesNorm) {
  // on explicit quadratic and quartic radicals both valuation routes agree
  for (auto [p, qq] : {std::pair{"y^2-x1*x2", "y^2-x1*x2-x1^4*x2^3"}, std::pair{"y^4-x1*x2^2", "y^4-x1*x2^2-x1^9"}}) {
    auto FP = npe_factor(monic(p, 2, 10), 10), FQ = npe_factor(monic(qq, 2, 10), 10);
    if (!(FP.gamma == FQ.gamma)) continue;
    for (auto& a : FP.roots)
      for (auto& b : FQ.roots) {
        auto ea = a.conj ? gamma_conjugate(a, a.conj) : a;
        auto eb = b.conj ? gamma_conjugate(b, b.conj) : b;
        VChart x, y;
        for (auto& c : ea.A) x.A.push_back(detail::exact_chart(c, 10));
        for (auto& c : eb.A) y.A.push_back(detail::exact_chart(c, 10));
        auto n = detail::vchart_valuation(detail::vchart_sub(x, y), FP.gamma, 10);
        auto m = detail::conjugate_gap(ea, eb, 10);
        if (n && *n <= 10) EXPECT_EQ(m, n) << p;
      }
  }
}

TEST(MatchFactors, IrreducibleQuadratic) {
  auto M = match_factors(monic("y^2-x1*x2", 2, 10), monic("y^2-x1*x2-x1^7", 2, 10), 10);
  ASSERT_EQ(M.factors.size(), 1u);
  EXPECT_EQ(M.factors[0].degree, 2);
  ASSERT_TRUE(M.factors[0].gap.has_value());
  EXPECT_EQ(*M.factors[0].gap, 7);
  EXPECT_GE(mpq_class(*M.factors[0].gap), mpq_class(7, 2));
}

TEST(MatchFactors, ExplicitLinearFactors) {
  auto M = match_factors(monic("(y-x1)*(y-x2)", 2, 10), monic("(y-x1-x1^9)*(y-x2)", 2, 10), 10);
  ASSERT_EQ(M.factors.size(), 2u);
  std::vector<std::optional<int>> gaps;
  for (auto& f : M.factors) gaps.push_back(f.gap);
  std::sort(gaps.begin(), gaps.end());
  EXPECT_EQ(gaps, (std::vector<std::optional<int>>{std::nullopt, 9}));
}

TEST(MatchFactors, Identical) {
  auto P = monic("(y-x1)*(y^2-x1*x2)", 2, 8);
  auto M = match_factors(P, P, 8);
  EXPECT_EQ(M.factors.size(), 2u);
  for (auto& f : M.factors) EXPECT_FALSE(f.gap.has_value());
}

TEST(Perturbation, RandomPairs) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 15; ++it) {
    auto pp = random_perturbation(rng);
    auto M = match_factors(pp.P, pp.Q, pp.cap);
    const mpq_class thr(pp.nu_eps, pp.P.degY());
    std::vector<int> seen(pp.P.degY(), 0);
    for (std::size_t i = 0; i < M.roots.pair.size(); ++i) {
      ++seen[M.roots.pair[i]];
      if (M.roots.gap[i]) EXPECT_GE(*M.roots.gap[i], thr);
    }
    EXPECT_EQ(seen, std::vector<int>(pp.P.degY(), 1));
    int deg = 0;
    for (auto& f : M.factors) {
      deg += f.degree;
      if (f.gap) EXPECT_GE(mpq_class(*f.gap), thr);
    }
    EXPECT_EQ(deg, pp.P.degY());
  }
}

TEST(Norm, Examples) {
  EXPECT_DOUBLE_EQ(norm_rho(series("1", 2, 3), 0.7).value, 1.0);
  EXPECT_DOUBLE_EQ(norm_rho(series("x1+x2", 2, 3), 1.0).value, 2.0);
  auto n = norm_rho(series("3*x1^2-4*i*x2^2", 2, 3), 0.5);
  EXPECT_NEAR(n.value, 1.75, n.error + 1e-15);
  EXPECT_GT(n.error, 0);
  EXPECT_LT(n.error, 1e-12);
  EXPECT_THROW(norm_rho(series("x1", 2, 3), 0.0), std::invalid_argument);
}

TEST(Norm, Submultiplicative) {
  std::mt19937_64 rng(8);
  for (int it = 0; it < 200; ++it) {
    auto f = rand_series(rng, 2, 6, 3), g = rand_series(rng, 2, 6, 3);
    const double rho = 0.25 + 0.25 * (it % 7);
    auto fg = f * g;
    // the product is exact through degree 6; compare on full polynomials
    auto nf = norm_rho(f, rho).value, ng = norm_rho(g, rho).value;
    std::vector<Term> t;
    for (auto& [a, ca] : f.terms())
      for (auto& [b, cb] : g.terms()) t.emplace_back(exp_add(a, b), ca * cb);
    auto full = TruncatedSeries::from_terms(2, 12, t);
    const double nfg = norm_rho(full, rho).value;
    EXPECT_LE(nfg, nf * ng * (1 + 1e-9) + 1e-300);
    EXPECT_LE(norm_rho(fg, rho).value, nfg * (1 + 1e-9) + 1e-300);
  }
}

TEST(Mahler, Examples) {
  auto a = mahler_check(hp("x1", 2), hp("x1", 2));
  EXPECT_DOUBLE_EQ(a.ratio, 1.0);
  EXPECT_TRUE(a.submultiplicative && a.mahler);
  auto b = mahler_check(hp("x1-x2", 2), hp("x1+x2", 2));
  EXPECT_DOUBLE_EQ(b.hb, 2.0);
  EXPECT_DOUBLE_EQ(b.lhs, 4.0);
  EXPECT_DOUBLE_EQ(b.ratio, 2.0);
  EXPECT_EQ(b.exponent, 2);
  EXPECT_TRUE(b.mahler);
}

TEST(Mahler, RandomHomogeneousPairs) {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 200; ++it) {
    auto h = rand_series(rng, 2, 6, 6, 0, 0.6)[static_cast<int>(1 + rng() % 5)];
    auto b = rand_series(rng, 2, 6, 6, 0, 0.6)[static_cast<int>(1 + rng() % 5)];
    if (h.is_zero() || b.is_zero()) continue;
    auto r = mahler_check(h, b);
    EXPECT_TRUE(r.submultiplicative);
    EXPECT_TRUE(r.mahler);
    EXPECT_GE(r.ratio, 1.0 - 1e-12);
  }
}
