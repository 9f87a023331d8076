#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace pft;

namespace {

// Independent univariate oracle: dense rational vectors.
std::vector<mpq_class> conv(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, int cap) {
  std::vector<mpq_class> r(cap + 1, 0);
  for (int i = 0; i <= cap; ++i)
    for (int j = 0; i + j <= cap; ++j) r[i + j] += a[i] * b[j];
  return r;
}

mpq_class fact(int n) {
  mpz_class f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return mpq_class(f);
}

}  // namespace

TEST(SeriesCore, DifferenceOfSquares) {
  auto a = poly(2, 6, {{gq(1), ex({0, 0})}, {gq(1), ex({1, 0})}});
  auto b = poly(2, 6, {{gq(1), ex({0, 0})}, {gq(-1), ex({1, 0})}});
  EXPECT_EQ(s_mul(a, b), poly(2, 6, {{gq(1), ex({0, 0})}, {gq(-1), ex({2, 0})}}));
}

TEST(SeriesCore, MultiplyByOne) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    auto f = rand_series(rng, 3, 6, 6);
    EXPECT_EQ(s_mul(f, TruncatedSeries::constant(3, 6, gq(1))), f);
  }
}

TEST(SeriesCore, ExpTimesExpNegIsOne) {
  const int cap = 8;
  std::vector<Term> ep, em;
  std::vector<mpq_class> op(cap + 1), om(cap + 1);
  for (int k = 0; k <= cap; ++k) {
    mpq_class c = 1 / fact(k);
    ep.emplace_back(ex({k, 0}), GaussRational(c));
    em.emplace_back(ex({k, 0}), GaussRational(k % 2 ? mpq_class(-c) : c));
    op[k] = c;
    om[k] = k % 2 ? mpq_class(-c) : c;
  }
  auto r = s_mul(TruncatedSeries::from_terms(2, cap, ep), TruncatedSeries::from_terms(2, cap, em));
  auto oracle = conv(op, om, cap);
  for (int k = 0; k <= cap; ++k) EXPECT_EQ(r.coeff(ex({k, 0})), GaussRational(oracle[k]));
  EXPECT_EQ(r, TruncatedSeries::constant(2, cap, gq(1)));
}

TEST(SeriesCore, CapIsMinimum) {
  auto a = TruncatedSeries::constant(2, 5, gq(1));
  auto b = TruncatedSeries::constant(2, 3, gq(2));
  EXPECT_EQ(s_mul(a, b).cap(), 3);
  EXPECT_EQ((a + b).cap(), 3);
  EXPECT_THROW(s_mul(a, TruncatedSeries::constant(3, 5, gq(1))), VariableMismatch);
}

TEST(SeriesCore, InverseGeometric) {
  const int cap = 9;
  auto f = poly(2, cap, {{gq(1), ex({0, 0})}, {gq(-1), ex({1, 0})}});
  std::vector<Term> geo;
  for (int k = 0; k <= cap; ++k) geo.emplace_back(ex({k, 0}), gq(1));
  EXPECT_EQ(s_inv_unit(f), TruncatedSeries::from_terms(2, cap, geo));
  EXPECT_EQ(s_inv_unit(TruncatedSeries::constant(2, cap, gq(2))), TruncatedSeries::constant(2, cap, gq(1, 0, 2)));
  EXPECT_THROW(s_inv_unit(TruncatedSeries::var(2, cap, 0)), NotAUnit);
}

TEST(SeriesCore, InverseNeumann) {
  const int cap = 7;
  auto s = poly(2, cap, {{gq(1), ex({1, 0})}, {gq(1), ex({0, 1})}});
  auto f = TruncatedSeries::constant(2, cap, gq(1)) + s;
  // Neumann oracle: sum_k (-s)^k via repeated multiplication
  TruncatedSeries acc = TruncatedSeries::constant(2, cap, gq(1)), p = acc;
  for (int k = 1; k <= cap; ++k) {
    p = s_mul(p, -s);
    acc += p;
  }
  EXPECT_EQ(s_inv_unit(f), acc);
}

TEST(SeriesCore, InverseTwoSidedRandom) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto f = rand_series(rng, 2, 8, 8) + TruncatedSeries::constant(2, 8, gq(1, 1));
    if (f.constant_term().is_zero()) continue;
    auto g = s_inv_unit(f);
    EXPECT_EQ(s_mul(f, g), TruncatedSeries::constant(2, 8, gq(1)));
    EXPECT_EQ(s_mul(g, f), TruncatedSeries::constant(2, 8, gq(1)));
  }
}

TEST(SeriesCore, SubstOsgoodMonomial) {
  auto f = poly(2, 6, {{gq(1), ex({1, 1})}});
  auto u1 = TruncatedSeries::var(2, 6, 0);
  auto u1u2 = poly(2, 6, {{gq(1), ex({1, 1})}});
  EXPECT_EQ(s_subst(f, {u1, u1u2}), poly(2, 6, {{gq(1), ex({2, 1})}}));
}

TEST(SeriesCore, SubstIdentity) {
  std::mt19937_64 rng(3);
  auto f = rand_series(rng, 3, 6, 6);
  EXPECT_EQ(s_subst(f, {TruncatedSeries::var(3, 6, 0), TruncatedSeries::var(3, 6, 1), TruncatedSeries::var(3, 6, 2)}), f);
}

TEST(SeriesCore, SubstCuspBlowup) {
  auto f = poly(2, 8, {{gq(1), ex({0, 2})}, {gq(-1), ex({3, 0})}});
  auto v = TruncatedSeries::var(2, 8, 0);
  auto vw = poly(2, 8, {{gq(1), ex({1, 1})}});
  EXPECT_EQ(s_subst(f, {v, vw}), poly(2, 8, {{gq(1), ex({2, 2})}, {gq(-1), ex({3, 0})}}));
  EXPECT_THROW(s_subst(f, {v + TruncatedSeries::constant(2, 8, gq(1)), vw}), ConstantTermNonzero);
  EXPECT_THROW(s_subst(f, {v}), VariableMismatch);
}

TEST(SeriesCore, SubstFunctorial) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 5; ++t) {
    auto f = rand_series(rng, 2, 6, 6);
    std::vector<TruncatedSeries> g{rand_series(rng, 2, 6, 4, 1), rand_series(rng, 2, 6, 4, 1)};
    std::vector<TruncatedSeries> h{rand_series(rng, 2, 6, 3, 1), rand_series(rng, 2, 6, 3, 1)};
    std::vector<TruncatedSeries> gh{s_subst(g[0], h), s_subst(g[1], h)};
    EXPECT_EQ(s_subst(s_subst(f, g), h), s_subst(f, gh));
  }
}

TEST(SeriesCore, OrderInitial) {
  auto f = poly(2, 10, {{gq(1), ex({2, 0})}, {gq(1), ex({0, 3})}});
  auto oi = s_order_initial(f);
  ASSERT_TRUE(oi.order);
  EXPECT_EQ(*oi.order, 2);
  EXPECT_EQ(*oi.initial, HPoly::monomial(2, ex({2, 0})));
  auto z = s_order_initial(TruncatedSeries(2, 10));
  EXPECT_FALSE(z.order);
  EXPECT_FALSE(z.initial);
  auto g = poly(2, 10, {{gq(1), ex({1, 1})}, {gq(-1), ex({0, 2})}, {gq(5), ex({3, 1})}});
  auto og = s_order_initial(g);
  EXPECT_EQ(*og.order, 2);
  EXPECT_EQ(*og.initial, g[2]);
}

TEST(SeriesCore, RootUnitBinomial) {
  const int cap = 10;
  EXPECT_EQ(s_root_unit(TruncatedSeries::constant(2, cap, gq(1)), 5), TruncatedSeries::constant(2, cap, gq(1)));
  auto f = poly(2, cap, {{gq(1), ex({0, 0})}, {gq(1), ex({1, 0})}});
  // binomial oracle: C(1/2, k)
  std::vector<Term> b;
  mpq_class c = 1;
  for (int k = 0; k <= cap; ++k) {
    b.emplace_back(ex({k, 0}), GaussRational(c));
    c = c * (mpq_class(1, 2) - k) / (k + 1);
  }
  auto r = s_root_unit(f, 2);
  EXPECT_EQ(r, TruncatedSeries::from_terms(2, cap, b));
  EXPECT_EQ(r.coeff(ex({2, 0})), gq(-1, 0, 8));
  auto sq = poly(2, cap, {{gq(1), ex({0, 0})}, {gq(2), ex({0, 1})}, {gq(1), ex({0, 2})}});
  EXPECT_EQ(s_root_unit(sq, 2), poly(2, cap, {{gq(1), ex({0, 0})}, {gq(1), ex({0, 1})}}));
  EXPECT_THROW(s_root_unit(TruncatedSeries::constant(2, cap, gq(2)), 2), BaseFieldRootMissing);
}

TEST(SeriesCore, RootUnitPowerProperty) {
  std::mt19937_64 rng(5);
  for (unsigned e = 1; e <= 5; ++e) {
    auto f = rand_series(rng, 2, 7, 7, 1) + TruncatedSeries::constant(2, 7, gq(1));
    EXPECT_EQ(s_pow(s_root_unit(f, e), e), f);
  }
  auto f = rand_series(rng, 2, 6, 6, 1) + TruncatedSeries::constant(2, 6, gq(-4));
  EXPECT_EQ(s_pow(s_root_unit(f, 2), 2), f);
}

TEST(SeriesCore, ValuationAdditive) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    auto f = rand_series(rng, 2, 10, 5, 2);
    auto g = rand_series(rng, 2, 10, 5, 1);
    auto of = s_order(f), og = s_order(g);
    if (!of || !og || *of + *og > 10) continue;
    EXPECT_EQ(*s_order(s_mul(f, g)), *of + *og);
  }
}

TEST(SeriesCore, RingAxioms) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10; ++t) {
    auto a = rand_series(rng, 2, 6, 6), b = rand_series(rng, 2, 6, 6), c = rand_series(rng, 2, 6, 6);
    EXPECT_EQ(s_mul(a, s_mul(b, c)), s_mul(s_mul(a, b), c));
    EXPECT_EQ(s_mul(a, b), s_mul(b, a));
    EXPECT_EQ(s_mul(a, b + c), s_mul(a, b) + s_mul(a, c));
  }
}

TEST(SeriesCore, KthRootsInGaussianRationals) {
  auto r = kth_roots(gq(-4), 2);
  ASSERT_EQ(r.size(), 2u);
  for (auto& x : r) EXPECT_EQ(x * x, gq(-4));
  EXPECT_EQ(kth_roots(gq(1), 4).size(), 4u);
  EXPECT_TRUE(kth_roots(gq(2), 2).empty());
  EXPECT_EQ(kth_roots(gq(0, 1, 2), 2).size(), 2u);  // i/2 = ((1+i)/2)^2
  auto c = kth_roots(gq(-8, 0, 27), 3);
  ASSERT_FALSE(c.empty());
  EXPECT_EQ(pow(c[0], 3), gq(-8, 0, 27));
}

TEST(Expressions, SeriesRoundTrip) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    int n = 1 + t % 3;
    auto f = rand_series(rng, n, 7, 7, 0, 0.4, 9);
    EXPECT_EQ(parse_series(to_expr(f), n, 7), f) << to_expr(f);
  }
  EXPECT_EQ(to_expr(TruncatedSeries::constant(2, 4, gq(0))), "0");
}

TEST(Expressions, MonicRoundTrip) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 20; ++t) {
    std::vector<TruncatedSeries> a;
    for (int k = 0; k < 1 + t % 3; ++k) a.push_back(rand_series(rng, 2, 6, 6, 1, 0.4));
    MonicPoly P(a);
    EXPECT_EQ(parse_monic(to_expr(P), 2, 6), P) << to_expr(P);
  }
}

TEST(Expressions, HomogeneousRoundTrip) {
  auto h = hp("x1^3 - 2/3*i*x1*x2^2 + (1 + i)*x2^3", 2);
  EXPECT_EQ(parse_hpoly(to_expr(h), 2), h);
}

TEST(Expressions, CoefficientForms) {
  EXPECT_EQ(coeff_expr(gq(-1, 0, 3)), "-1/3");
  EXPECT_EQ(coeff_expr(gq(0, 2, 5)), "2*i/5");
  EXPECT_EQ(parse_series(to_expr(series("(1 - 2/5*i)*x1", 1, 2)), 1, 2), series("x1 - 2*i*x1/5", 1, 2));
}

TEST(Expressions, Errors) {
  EXPECT_THROW(parse_series("x1 +", 2, 4), FormatError);
  EXPECT_THROW(parse_series("x3", 2, 4), FormatError);
  EXPECT_THROW(parse_series("x1^999", 2, 4), FormatError);
  EXPECT_THROW(parse_series("1/0", 2, 4), FormatError);
  EXPECT_THROW(parse_series("x1 * * x2", 2, 4), FormatError);
}
