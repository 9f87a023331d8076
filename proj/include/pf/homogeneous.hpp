#pragma once

#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "berkowitz.hpp"
#include "chart.hpp"

namespace pf {

// Element sum_{k=k0..cap} a_k / h^(alpha k + beta) of the projective ring P_h[[x]], nu(term k) = k.
class PhElem {
public:
  PhElem() = default;
  PhElem(HPoly h, int alpha, int beta, int k0, int cap, std::vector<HPoly> a, bool laurent = false)
      : h_(std::move(h)), alpha_(alpha), beta_(beta), k0_(k0), cap_(cap), a_(std::move(a)) {
    if (h_.is_zero()) throw std::invalid_argument("PhElem: zero denominator");
    if (alpha_ < 0 || beta_ < 0) throw std::invalid_argument("PhElem: negative alpha/beta");
    if (k0_ < 0 && !laurent) throw std::invalid_argument("PhElem: k0 < 0 outside npe");
    if (cap_ < k0_) cap_ = k0_ - 1;
    a_.resize(cap_ - k0_ + 1);
    for (int k = k0_; k <= cap_; ++k) {
      HPoly& p = a_[k - k0_];
      if (p.nvars() != h_.nvars() && !p.is_zero()) throw VariableMismatch("PhElem numerator");
      int m = denom_power(k);
      if (p.is_zero()) {
        p = HPoly(h_.nvars(), std::max(0, k + m * h_.degree()));
        continue;
      }
      if (m < 0) throw std::invalid_argument("PhElem: negative denominator power");
      if (p.degree() != k + m * h_.degree())
        throw std::invalid_argument("PhElem invariant deg(a_k) - (alpha k + beta) deg(h) = k violated");
    }
  }

  static PhElem from_series(const TruncatedSeries& f) {
    std::vector<HPoly> a(f.components().begin(), f.components().end());
    return PhElem(HPoly::constant(f.nvars(), GaussRational(1)), 0, 0, 0, f.cap(), std::move(a));
  }
  static PhElem zero(int nvars, int cap) {
    return PhElem(HPoly::constant(nvars, GaussRational(1)), 0, 0, 0, cap, {});
  }

  const HPoly& h() const { return h_; }
  int nvars() const { return h_.nvars(); }
  int alpha() const { return alpha_; }
  int beta() const { return beta_; }
  int k0() const { return k0_; }
  int cap() const { return cap_; }
  int denom_power(int k) const { return alpha_ * k + beta_; }
  HPoly term(int k) const { return k >= k0_ && k <= cap_ ? a_[k - k0_] : HPoly(nvars(), 0); }
  const std::vector<HPoly>& numerators() const { return a_; }

  std::optional<int> valuation() const {
    for (int k = k0_; k <= cap_; ++k)
      if (!a_[k - k0_].is_zero()) return k;
    return std::nullopt;
  }
  bool is_zero() const { return !valuation().has_value(); }

  KSer chart() const {
    KSer s(k0_, cap_);
    RatFunc hc = chart_of(h_);
    for (int k = k0_; k <= cap_; ++k) {
      const HPoly& p = a_[k - k0_];
      if (p.is_zero()) continue;
      RatFunc r = chart_of(p);
      int m = denom_power(k);
      if (m) r = r / pow_rf(hc, m);
      s.set(k, r);
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const PhElem& A) {
    bool any = false;
    for (int k = A.k0_; k <= A.cap_; ++k) {
      const HPoly& p = A.a_[k - A.k0_];
      if (p.is_zero()) continue;
      if (any) os << " + ";
      os << "(" << p << ")/h^" << A.denom_power(k);
      any = true;
    }
    if (!any) os << "0";
    return os << " [h=" << A.h_ << ", cap " << A.cap_ << "]";
  }

  static RatFunc pow_rf(const RatFunc& r, int m) {
    RatFunc out(1), b = r;
    while (m > 0) {
      if (m & 1) out = out * b;
      m >>= 1;
      if (m) b = b * b;
    }
    return out;
  }

private:
  HPoly h_;
  int alpha_ = 0, beta_ = 0, k0_ = 0, cap_ = -1;
  std::vector<HPoly> a_;
};

// Smallest h = x1^eps * H(x) such that every chart coefficient lies in P_h.
inline HPoly choose_h(const std::vector<KSer>& items, int nvars) {
  UPoly L = UPoly::constant(GaussRational(1));
  bool eps = false;
  for (auto& s : items)
    for (int k = s.lo; k <= s.prec; ++k) {
      const RatFunc r = s.at(k);
      if (r.is_zero()) continue;
      if (r.den().deg() > 0) L = divmod(L * r.den(), gcd(L, r.den())).first;
      if (r.num().deg() - r.den().deg() > k) eps = true;
    }
  if (L.deg() > 0) L = squarefree_part(L);
  if (nvars == 1) {
    if (L.deg() > 0) throw std::invalid_argument("choose_h: w in one variable");
    return eps ? HPoly::var(1, 0) : HPoly::constant(1, GaussRational(1));
  }
  HPoly H = homogenize(L, L.deg(), nvars);
  return eps ? HPoly::var(nvars, 0) * H : H;
}

// Write a chart series over the denominator h with the smallest admissible alpha, beta.
inline PhElem ph_from_chart(const KSer& s, const HPoly& h, int nvars, bool laurent = false) {
  const UPoly L = dehomogenize(h);
  const int dh = h.degree();
  const int eps = dh - L.deg();
  std::vector<int> need(s.prec - s.lo + 1, 0);
  std::vector<bool> nz(need.size(), false);
  for (int k = s.lo; k <= s.prec; ++k) {
    const RatFunc r = s.at(k);
    if (r.is_zero()) continue;
    nz[k - s.lo] = true;
    int m = 0;
    UPoly q = r.den(), Lm = UPoly::constant(GaussRational(1));
    while (!(Lm % q).is_zero()) {
      if (m > q.deg() + 1 || L.deg() == 0) throw DenominatorMismatch("element not in P_h for the given h");
      Lm = Lm * L;
      ++m;
    }
    int excess = r.num().deg() - q.deg() - k;
    if (excess > 0) {
      if (eps == 0) throw DenominatorMismatch("pole along x1 = 0 not covered by h");
      m = std::max(m, (excess + eps - 1) / eps);
    }
    need[k - s.lo] = m;
  }
  int beta0 = 0;
  for (int k = s.lo; k <= std::min(0, s.prec); ++k)
    if (nz[k - s.lo]) beta0 = std::max(beta0, need[k - s.lo]);
  int alpha = 0;
  for (int k = std::max(1, s.lo); k <= s.prec; ++k)
    if (nz[k - s.lo]) alpha = std::max(alpha, (need[k - s.lo] - beta0 + k - 1) / k);
  int beta = beta0;
  for (int k = s.lo; k < 0 && k <= s.prec; ++k)
    if (nz[k - s.lo]) beta = std::max(beta, need[k - s.lo] - alpha * k);
  int k0 = std::min(s.val(), s.prec + 1);
  if (!laurent) k0 = std::max(k0, 0);
  std::vector<HPoly> a;
  for (int k = k0; k <= s.prec; ++k) {
    const RatFunc r = s.at(k);
    if (r.is_zero()) {
      a.emplace_back(nvars, 0);
      continue;
    }
    int m = alpha * k + beta;
    UPoly N = divmod(r.num() * L.pow(m), r.den()).first;
    a.push_back(homogenize(N, k + m * dh, nvars));
  }
  return PhElem(h, alpha, beta, k0, s.prec, std::move(a), laurent);
}

// Same element with the smallest admissible alpha, beta for its own h.
inline PhElem ph_normalized(const PhElem& A) {
  if (A.h().degree() == 0) {
    KSer s = A.chart();
    return ph_from_chart(s, HPoly::constant(A.nvars(), GaussRational(1)), A.nvars(), A.k0() < 0);
  }
  return ph_from_chart(A.chart(), A.h(), A.nvars(), A.k0() < 0);
}

inline PhElem ph_mul(const PhElem& A, const PhElem& B) {
  if (A.h() != B.h()) throw DenominatorMismatch("ph_mul: different h; rebase first");
  const int nv = A.nvars();
  const int cap = std::min(A.cap(), B.cap());
  const int k0 = A.k0() + B.k0();
  std::vector<HPoly> a;
  const int alpha = A.alpha() + B.alpha(), beta = A.beta() + B.beta();
  for (int k = k0; k <= cap; ++k) {
    HPoly acc(nv, std::max(0, k + (alpha * k + beta) * A.h().degree()));
    for (int i = A.k0(); i <= A.cap(); ++i) {
      int j = k - i;
      if (j < B.k0() || j > B.cap()) continue;
      HPoly ai = A.term(i), bj = B.term(j);
      if (ai.is_zero() || bj.is_zero()) continue;
      int fill = alpha * k + beta - A.denom_power(i) - B.denom_power(j);
      acc += ai * bj * A.h().pow(fill);
    }
    a.push_back(std::move(acc));
  }
  bool laurent = k0 < 0;
  return ph_normalized(PhElem(A.h(), alpha, beta, k0, cap, std::move(a), laurent));
}

inline PhElem ph_rebase(const PhElem& A, const HPoly& h2) {
  std::vector<HPoly> a;
  for (int k = A.k0(); k <= A.cap(); ++k) {
    HPoly p = A.term(k);
    a.push_back(p.is_zero() ? HPoly(A.nvars(), std::max(0, k + A.denom_power(k) * (A.h().degree() + h2.degree())))
                            : p * h2.pow(A.denom_power(k)));
  }
  return PhElem(A.h() * h2, A.alpha(), A.beta(), A.k0(), A.cap(), std::move(a), A.k0() < 0);
}

inline PhElem ph_add(const PhElem& A, const PhElem& B) {
  if (A.h() != B.h()) throw DenominatorMismatch("ph_add: different h; rebase first");
  return ph_from_chart(A.chart() + B.chart(), A.h(), A.nvars(), std::min(A.k0(), B.k0()) < 0);
}

// Equality as elements of Frac(V_nu) through the common cap.
inline bool ph_equal(const PhElem& A, const PhElem& B) {
  int cap = std::min(A.cap(), B.cap());
  KSer a = A.chart(), b = B.chart();
  for (int k = std::min(A.k0(), B.k0()); k <= cap; ++k)
    if (a.at(k) != b.at(k)) return false;
  return true;
}

// Integral homogeneous element: root of Gamma = z^d + f_1 z^(d-1) + ... + f_d with deg f_i = omega * i.
struct HomElem {
  std::vector<HPoly> f;  // f[0] = 1, ..., f[d]
  mpq_class omega;
  bool pure = false;

  int degree() const { return static_cast<int>(f.size()) - 1; }
  int nvars() const { return f.front().nvars(); }
  HPoly radicand() const { return -f.back(); }
  bool is_trivial() const { return degree() == 1 && f[1] == HPoly::constant(nvars(), GaussRational(-1)); }
  friend bool operator==(const HomElem& a, const HomElem& b) { return a.f == b.f; }
};

inline HomElem gamma_adjoin(const std::vector<HPoly>& coeffs) {
  if (coeffs.size() < 2) throw NotWeightedHomogeneous("Gamma must have degree >= 1 in z");
  const int nv = coeffs[0].nvars();
  if (coeffs[0] != HPoly::constant(nv, GaussRational(1))) throw NotWeightedHomogeneous("Gamma must be monic in z");
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (coeffs[d].is_zero()) throw NotWeightedHomogeneous("f_d must be nonzero (index " + std::to_string(d) + ")");
  HomElem g;
  g.f = coeffs;
  g.omega = mpq_class(coeffs[d].degree(), d);
  g.omega.canonicalize();
  g.pure = true;
  for (int i = 1; i < d; ++i) {
    if (coeffs[i].is_zero()) continue;
    g.pure = false;
    if (mpq_class(coeffs[i].degree()) != g.omega * i)
      throw NotWeightedHomogeneous("deg f_i != omega * i at index " + std::to_string(i));
  }
  return g;
}

inline HomElem pure_gamma(const HPoly& radicand, int e) {
  std::vector<HPoly> f{HPoly::constant(radicand.nvars(), GaussRational(1))};
  for (int i = 1; i < e; ++i) f.emplace_back(radicand.nvars(), 0);
  f.push_back(-radicand);
  return gamma_adjoin(f);
}

inline HomElem trivial_gamma(int nvars) { return pure_gamma(HPoly::constant(nvars, GaussRational(1)), 1); }

// Element sum_k A_k gamma^k of the valued extension; conj = j stands for gamma -> zeta_e^j gamma.
struct VGammaElem {
  HomElem gamma;
  std::vector<PhElem> A;
  int conj = 0;
};

inline std::optional<mpq_class> vg_valuation(const VGammaElem& xi) {
  std::optional<mpq_class> best;
  for (std::size_t k = 0; k < xi.A.size(); ++k) {
    auto v = xi.A[k].valuation();
    if (!v) continue;
    mpq_class c = mpq_class(*v) + xi.gamma.omega * static_cast<long>(k);
    if (!best || c < *best) best = c;
  }
  return best;
}

inline constexpr int kMaxCyclotomic = 12;

inline VGammaElem gamma_conjugate(const VGammaElem& xi, int j) {
  if (!xi.gamma.pure) throw NonPureUnsupported("gamma_conjugate needs a pure gamma");
  const int e = xi.gamma.degree();
  if (e > kMaxCyclotomic) throw CyclotomicUnsupported("conjugation needs zeta_" + std::to_string(e));
  j = ((j % e) + e) % e;
  VGammaElem r = xi;
  if (4 % e == 0) {
    // zeta_e in {1, -1, i}
    GaussRational zeta = e == 1 ? GaussRational(1) : e == 2 ? GaussRational(-1) : GaussRational::I();
    for (std::size_t k = 0; k < r.A.size(); ++k) {
      GaussRational f = pow(zeta, static_cast<unsigned>((j * k) % e));
      if (f.is_one()) continue;
      KSer s = r.A[k].chart().scaled(RatFunc(f));
      r.A[k] = ph_from_chart(s, r.A[k].h(), r.A[k].nvars(), r.A[k].k0() < 0);
    }
    return r;
  }
  r.conj = (r.conj + j) % e;
  return r;
}

// Chart arithmetic in V[gamma]: coefficients over K((t)) modulo the chart minimal polynomial.
struct VChart {
  std::vector<KSer> A;
};

inline std::vector<KSer> gamma_chart_relation(const HomElem& g, int prec) {
  // gamma^d = -sum_{i>=1} f_i gamma^(d-i); returns the coefficients of gamma^(d-i) for i = 1..d at index d-i
  const int d = g.degree();
  std::vector<KSer> rel(d, KSer(0, prec));
  for (int i = 1; i <= d; ++i) {
    const HPoly& fi = g.f[i];
    if (fi.is_zero()) continue;
    KSer s(0, prec);
    if (fi.degree() <= prec) s.set(fi.degree(), -chart_of(fi));
    rel[d - i] = s;
  }
  return rel;
}

inline VChart vchart_mul(const VChart& a, const VChart& b, const HomElem& g, int prec) {
  const int d = g.degree();
  std::vector<KSer> prod(2 * d - 1, KSer(0, prec));
  bool init[64] = {};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      KSer p = a.A[i] * b.A[j];
      prod[i + j] = init[i + j] ? prod[i + j] + p : p;
      init[i + j] = true;
    }
  auto rel = gamma_chart_relation(g, prec + 64);
  for (int m = 2 * d - 2; m >= d; --m) {
    if (!init[m]) continue;
    for (int r = 0; r < d; ++r) {
      if (rel[r].is_zero()) continue;
      KSer p = prod[m] * rel[r];
      int idx = m - d + r;
      prod[idx] = init[idx] ? prod[idx] + p : p;
      init[idx] = true;
    }
  }
  prod.resize(d);
  return {prod};
}

inline VChart to_vchart(const VGammaElem& x) {
  VChart c;
  for (auto& a : x.A) c.A.push_back(a.chart());
  return c;
}

inline VGammaElem from_vchart(const VChart& c, const HomElem& g, const HPoly& h, int nvars, int conj = 0) {
  VGammaElem r{g, {}, conj};
  for (auto& s : c.A) r.A.push_back(ph_from_chart(s, h, nvars, true));
  return r;
}

inline VGammaElem vg_mul(const VGammaElem& a, const VGammaElem& b) {
  if (!(a.gamma == b.gamma) || a.conj != b.conj) throw std::invalid_argument("vg_mul: different gamma");
  int prec = 0;
  for (auto& x : a.A) prec = std::max(prec, x.cap());
  for (auto& x : b.A) prec = std::max(prec, x.cap());
  HPoly h = a.A.front().h();
  for (auto& x : a.A)
    if (x.h() != h) throw DenominatorMismatch("vg_mul: mixed h");
  for (auto& x : b.A)
    if (x.h() != h) throw DenominatorMismatch("vg_mul: mixed h");
  VChart c = vchart_mul(to_vchart(a), to_vchart(b), a.gamma, prec);
  return from_vchart(c, a.gamma, h, a.A.front().nvars(), a.conj);
}

// ---------------------------------------------------------------- primitive elements

struct PrimitiveResult {
  HomElem gamma0;
  VGammaElem expr1, expr2;
  GaussRational c;
};

namespace detail {

// Homogeneous k-th root of a homogeneous fraction num/den (n <= 2), as (num, den) chart pair.
inline std::optional<RatFunc> homog_kth_root(const RatFunc& r, int degree, unsigned k) {
  if (degree % static_cast<int>(k)) return std::nullopt;
  return kth_root(r, k);
}

inline PhElem exact_term(const RatFunc& r, int degree, int nvars) {
  KSer s(degree, degree);
  s.set(degree, r);
  HPoly h = choose_h({s}, nvars);
  return ph_from_chart(s, h, nvars, degree < 0);
}

// Is gamma2^m = r * gamma1^k for some k and base element r?  Returns (k, r in chart).
inline std::optional<std::pair<int, RatFunc>> kummer_relation(const HomElem& g1, const HomElem& g2, int m) {
  const int e1 = g1.degree(), e2 = g2.degree();
  const int q = e2 / m;  // (gamma2^m)^q = g2
  RatFunc c1 = chart_of(g1.radicand()), c2 = chart_of(g2.radicand());
  for (int k = 0; k < e1; ++k) {
    if ((k * q) % e1) continue;
    int p = k * q / e1;  // gamma1^(k q) = g1^p
    RatFunc G = c2 / PhElem::pow_rf(c1, p);
    int deg = g2.radicand().degree() - p * g1.radicand().degree();
    auto r = homog_kth_root(G, deg, static_cast<unsigned>(q));
    if (r) return std::make_pair(k, *r);
  }
  return std::nullopt;
}

}  // namespace detail

inline PrimitiveResult primitive_element(const HomElem& g1, const HomElem& g2, std::uint64_t seed, bool swapped = false) {
  if (!g1.pure || !g2.pure) throw NonPureUnsupported("primitive_element needs pure gammas");
  const int nv = g1.nvars();
  auto gamma_itself = [&](const HomElem& g) {
    VGammaElem v{g, {}, 0};
    for (int k = 0; k < g.degree(); ++k) {
      KSer s(0, 0);
      if (k == 1) s.set(0, RatFunc(1));
      v.A.push_back(ph_from_chart(s, HPoly::constant(nv, GaussRational(1)), nv));
    }
    if (g.degree() == 1) v.A[0] = detail::exact_term(chart_of(g.radicand()), g.radicand().degree(), nv);
    return v;
  };
  // expression of gamma2 = r gamma1^k inside Q(x)(gamma1)
  auto in_terms_of = [&](const HomElem& base, const HomElem& g) -> std::optional<VGammaElem> {
    auto rel = detail::kummer_relation(base, g, 1);
    if (!rel) return std::nullopt;
    auto [k, r] = *rel;
    mpq_class deg = g.omega - base.omega * k;
    if (deg.get_den() != 1) return std::nullopt;
    VGammaElem v{base, {}, 0};
    for (int j = 0; j < base.degree(); ++j) {
      if (j == k) {
        v.A.push_back(detail::exact_term(r, static_cast<int>(deg.get_num().get_si()), nv));
      } else {
        v.A.push_back(PhElem::zero(nv, 0));
      }
    }
    return v;
  };
  if (g1 == g2) return {g1, gamma_itself(g1), gamma_itself(g1), GaussRational(0)};
  if (auto e = in_terms_of(g1, g2)) return {g1, gamma_itself(g1), *e, GaussRational(0)};
  if (auto e = in_terms_of(g2, g1)) return {g2, *e, gamma_itself(g2), GaussRational(0)};

  const int e1 = g1.degree(), e2 = g2.degree();
  // d2 = [F(gamma1, gamma2) : F(gamma1)], relation gamma2^d2 = r gamma1^kr
  int d2 = e2, kr = 0;
  RatFunc rr;
  for (int m = 1; m < e2; ++m) {
    if (e2 % m) continue;
    auto rel = detail::kummer_relation(g1, g2, m);
    if (rel) {
      d2 = m;
      kr = rel->first;
      rr = rel->second;
      break;
    }
  }
  if (d2 == e2) rr = chart_of(g2.radicand()), kr = 0;
  const RatFunc c1 = chart_of(g1.radicand());
  // degree matching: delta = gamma2 * gamma1^j has degree congruent to omega1 mod Z
  int jshift = -1;
  for (int j = 0; j < e1; ++j) {
    mpq_class diff = g1.omega - g2.omega - g1.omega * j;
    if (diff.get_den() == 1) {
      jshift = j;
      break;
    }
  }
  if (jshift < 0) {
    if (swapped) throw PrimitiveCheckFailed("degrees of gamma1 and gamma2 are incompatible modulo Z");
    PrimitiveResult r = primitive_element(g2, g1, seed, true);
    std::swap(r.expr1, r.expr2);
    return r;
  }
  const int N = e1 * d2;
  auto idx = [&](int a, int b) { return b * e1 + a; };
  // multiplication of basis vectors in the chart (x1 = 1): returns coefficient vector
  using Vec = std::vector<RatFunc>;
  auto mul_basis = [&](const Vec& x, int da, int db) {
    Vec out(N);
    for (int b = 0; b < d2; ++b)
      for (int a = 0; a < e1; ++a) {
        const RatFunc& v = x[idx(a, b)];
        if (v.is_zero()) continue;
        int na = a + da, nb = b + db;
        RatFunc f = v;
        while (nb >= d2) {
          nb -= d2;
          na += kr;
          f = f * rr;
        }
        while (na >= e1) {
          na -= e1;
          f = f * c1;
        }
        out[idx(na, nb)] = out[idx(na, nb)] + f;
      }
    return out;
  };
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (int attempt = 0; attempt < 32; ++attempt) {
    GaussRational c(dist(rng), dist(rng));
    if (c.is_zero()) continue;
    auto times_gamma0 = [&](const Vec& x) {
      Vec a = mul_basis(x, 1, 0);
      Vec b = mul_basis(x, jshift, 1);
      for (int i = 0; i < N; ++i) a[i] = a[i] + b[i] * RatFunc(c);
      return a;
    };
    Matrix<RatFunc> M(N, Vec(N));
    for (int col = 0; col < N; ++col) {
      Vec unit(N);
      unit[col] = RatFunc(1);
      Vec img = times_gamma0(unit);
      for (int row = 0; row < N; ++row) M[row][col] = img[row];
    }
    auto cp = berkowitz_charpoly(M, RatFunc(), RatFunc(1));
    std::vector<RatFunc> asc(cp.rbegin(), cp.rend());
    KPoly chi(asc);
    if (gcd(chi, chi.derivative()).deg() > 0) continue;
    // integral normalization gamma0' = c0 * gamma0
    UPoly c0 = UPoly::constant(GaussRational(1));
    for (int i = 1; i <= N; ++i) {
      const RatFunc& m = cp[i];
      if (m.den().deg() > 0) c0 = divmod(c0 * m.den(), gcd(c0, m.den())).first;
    }
    mpq_class omega0 = g1.omega + c0.deg();
    int extra = 0;
    auto fits = [&](int ex) {
      mpq_class om = omega0 + ex;
      for (int i = 1; i <= N; ++i) {
        RatFunc m = cp[i] * PhElem::pow_rf(RatFunc(c0), i);
        if (m.is_zero()) continue;
        mpq_class di = om * i;
        if (di.get_den() != 1) return false;
        if (m.num().deg() > di.get_num().get_si()) return false;
      }
      return true;
    };
    while (!fits(extra)) {
      if (++extra > 64) throw PrimitiveCheckFailed("cannot make the primitive element integral");
    }
    mpq_class om = omega0 + extra;
    std::vector<HPoly> f{HPoly::constant(nv, GaussRational(1))};
    for (int i = 1; i <= N; ++i) {
      RatFunc m = cp[i] * PhElem::pow_rf(RatFunc(c0), i);
      int di = static_cast<int>(mpq_class(om * i).get_num().get_si());
      f.push_back(m.is_zero() ? HPoly(nv, std::max(0, di)) : homogenize(m.num(), di, nv));
    }
    HomElem g0 = gamma_adjoin(f);
    // powers of gamma0' in the basis; solve for gamma1 and gamma2
    Matrix<RatFunc> V(N, Vec(N));
    Vec cur(N);
    cur[idx(0, 0)] = RatFunc(1);
    for (int j = 0; j < N; ++j) {
      for (int row = 0; row < N; ++row) V[row][j] = cur[row];
      cur = times_gamma0(cur);
      for (auto& x : cur) x = x * RatFunc(c0);
    }
    auto express = [&](int a, int b, const mpq_class& target_deg) {
      Vec rhs(N);
      rhs[idx(a, b)] = RatFunc(1);
      auto sol = solve(V, rhs);
      if (!sol) throw PrimitiveCheckFailed("expression system singular");
      VGammaElem v{g0, {}, 0};
      for (int j = 0; j < N; ++j) {
        const RatFunc& r = (*sol)[j];
        mpq_class deg = target_deg - om * j;
        if (r.is_zero() || deg.get_den() != 1) {
          if (!r.is_zero()) throw PrimitiveCheckFailed("non-integral coefficient degree");
          v.A.push_back(PhElem::zero(nv, 0));
          continue;
        }
        v.A.push_back(detail::exact_term(r, static_cast<int>(deg.get_num().get_si()), nv));
      }
      return v;
    };
    VGammaElem x1 = express(1 % e1, 0, g1.omega);
    VGammaElem x2 = e1 == 1 && d2 == 1 ? express(0, 0, g2.omega) : express(0, d2 > 1 ? 1 : 0, g2.omega);
    if (d2 == 1) {
      // gamma2 = r gamma1^kr is already in Q(x)(gamma1): compose through gamma1's expression
      x2 = express(kr % e1, 0, g2.omega);
      for (auto& a : x2.A) {
        KSer s = a.chart().scaled(rr * PhElem::pow_rf(c1, kr / e1));
        a = ph_from_chart(s, choose_h({s}, nv), nv, true);
      }
    }
    return {g0, x1, x2, c};
  }
  throw PrimitiveCheckFailed("no primitive combination found in 32 attempts");
}

}  // namespace pf
