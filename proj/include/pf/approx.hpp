#pragma once

#include <cmath>
#include <numeric>
#include <limits>
#include <optional>
#include <vector>

#include "berkowitz.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "npe.hpp"
#include "weierstrass.hpp"

namespace pf {

// pair[i] = j pairs root i of P with root j of Q; gap none means equal up to cap.
struct RootPairing {
  std::vector<int> pair;
  std::vector<std::optional<mpq_class>> gap;
  mpq_class threshold;                // nu(P - Q) / d
  std::optional<int> nu_difference;   // nu(P - Q), none when P = Q at cap
  int nu_discriminant = 0;
  int d = 0;
};

namespace detail {

inline std::optional<int> poly_distance(const MonicPoly& P, const MonicPoly& Q) {
  if (P.degY() != Q.degY() || P.nvars() != Q.nvars()) throw VariableMismatch("P and Q differ in shape");
  std::optional<int> best;
  for (int k = 1; k <= P.degY(); ++k) {
    const int cap = std::min(P.a(k).cap(), Q.a(k).cap());
    auto o = s_order(P.a(k).truncated(cap) - Q.a(k).truncated(cap));
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

struct Hypothesis {
  std::optional<int> nu_pq;
  int nu_disc = 0;
};

inline Hypothesis check_hypothesis(const MonicPoly& P, const MonicPoly& Q) {
  Hypothesis h;
  h.nu_pq = poly_distance(P, Q);
  auto od = s_order(discriminant(P));
  if (!od) throw NotReduced("discriminant of P vanishes up to cap");
  h.nu_disc = *od;
  const int d = P.degY();
  if (h.nu_pq && 2 * *h.nu_pq <= d * h.nu_disc)
    throw HypothesisViolated("2 nu(P-Q) = " + std::to_string(2 * *h.nu_pq) + " <= d nu(disc P) = " + std::to_string(d * h.nu_disc));
  return h;
}

inline std::vector<KSer> explicit_root(const VGammaElem& xi, int prec) {
  VGammaElem x = xi.conj ? gamma_conjugate(xi, xi.conj) : xi;
  if (x.conj) throw CyclotomicUnsupported("root given as a symbolic conjugate");
  std::vector<KSer> out;
  for (auto& a : x.A) out.push_back(exact_chart(a, prec));
  return out;
}

inline VChart unit_vchart(int d, int j, int prec) {
  VChart x;
  for (int k = 0; k < d; ++k) x.A.push_back(k == j ? KSer::constant(RatFunc(1), prec) : KSer(0, prec));
  return x;
}

// Roots of two factorizations rewritten over one common gamma.
struct CommonRoots {
  HomElem gamma;
  std::vector<VChart> p, q;
};

inline CommonRoots common_roots(const NpeFactorization& FP, const NpeFactorization& FQ, int prec) {
  PrimitiveResult pr = primitive_element(FP.gamma, FQ.gamma, 0);
  CommonRoots out;
  out.gamma = pr.gamma0;
  auto expr = [&](const VGammaElem& e) {
    VChart x;
    for (auto& a : e.A) x.A.push_back(exact_chart(a, prec));
    return x;
  };
  const VChart XP = expr(pr.expr1), XQ = expr(pr.expr2);
  for (auto& r : FP.roots) out.p.push_back(vchart_compose(explicit_root(r, prec), XP, out.gamma, prec));
  for (auto& r : FQ.roots) out.q.push_back(vchart_compose(explicit_root(r, prec), XQ, out.gamma, prec));
  return out;
}

// Valuation of an element of K((t))[gamma] through its norm; none when zero at the available precision.
inline std::optional<mpq_class> vchart_valuation(const VChart& x, const HomElem& g, int prec) {
  bool zero = true;
  for (auto& a : x.A) zero = zero && a.is_zero();
  if (zero) return std::nullopt;
  const int e = g.degree();
  if (e == 1) return mpq_class(x.A[0].val());
  Matrix<KSer> M(e, std::vector<KSer>(e, KSer(0, prec)));
  for (int j = 0; j < e; ++j) {
    VChart col = vchart_mul(x, unit_vchart(e, j, prec), g, prec);
    for (int i = 0; i < e; ++i) M[i][j] = col.A[i];
  }
  const int exact = e * (prec + 2) + 64;
  KSer N = berkowitz_det(M, KSer(0, exact), KSer::constant(RatFunc(1), exact));
  if (N.is_zero()) return std::nullopt;
  mpq_class v(N.val(), e);
  v.canonicalize();
  return v;
}

// Valuation of sigma^a(xi) - sigma^b(eta) for roots over one pure gamma, sigma: gamma -> zeta_e gamma.
// The gamma^k parts have distinct valuation classes, so the minimum over k is attained.
inline std::optional<mpq_class> conjugate_gap(const VGammaElem& xi, const VGammaElem& eta, int prec) {
  const HomElem& g = xi.gamma;
  const int e = g.degree();
  std::optional<mpq_class> best;
  for (int k = 0; k < e; ++k) {
    const KSer A = k < static_cast<int>(xi.A.size()) ? exact_chart(xi.A[k], prec) : KSer(0, prec);
    const KSer B = k < static_cast<int>(eta.A.size()) ? exact_chart(eta.A[k], prec) : KSer(0, prec);
    const int m = (((eta.conj - xi.conj) * k) % e + e) % e;
    std::optional<int> v;
    if ((4 * m) % e == 0) {
      // zeta_e^m is one of 1, i, -1, -i
      const int quarter = 4 * m / e;
      GaussRational z = pow(GaussRational::I(), static_cast<unsigned>(quarter));
      KSer d = A - B.scaled(RatFunc(z));
      if (!d.is_zero()) v = d.val();
    } else {
      if (!A.is_zero()) v = A.val();
      if (!B.is_zero()) v = v ? std::min(*v, B.val()) : B.val();
    }
    if (!v) continue;
    mpq_class c = mpq_class(*v) + g.omega * k;
    if (!best || c < *best) best = c;
  }
  return best;
}

inline VChart vchart_sub(const VChart& a, const VChart& b) { return vchart_add(a, vchart_scale(b, RatFunc(-1))); }

inline bool gap_less(const std::optional<mpq_class>& a, const std::optional<mpq_class>& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

inline bool gap_equal(const std::optional<mpq_class>& a, const std::optional<mpq_class>& b) {
  return a.has_value() == b.has_value() && (!a || *a == *b);
}

// Greedy pairing by maximal gap; any tie or collision means the cap cannot separate the roots.
inline RootPairing pair_by_gaps(const std::vector<std::vector<std::optional<mpq_class>>>& G, const Hypothesis& h, int d,
                                int cap) {
  RootPairing rp;
  rp.d = d;
  rp.nu_difference = h.nu_pq;
  rp.nu_discriminant = h.nu_disc;
  rp.threshold = h.nu_pq ? mpq_class(*h.nu_pq, d) : mpq_class(cap + 1, d);
  rp.threshold.canonicalize();
  std::vector<bool> used(G.size(), false);
  for (std::size_t i = 0; i < G.size(); ++i) {
    int best = -1;
    bool tie = false;
    for (std::size_t j = 0; j < G[i].size(); ++j) {
      if (best < 0 || gap_less(G[i][best], G[i][j])) {
        best = static_cast<int>(j);
        tie = false;
      } else if (gap_equal(G[i][best], G[i][j])) {
        tie = true;
      }
    }
    if (tie) throw PairingAmbiguous("root " + std::to_string(i) + " has two nearest roots at cap");
    if (used[best]) throw PairingAmbiguous("two roots of P pair with root " + std::to_string(best) + " of Q");
    used[best] = true;
    rp.pair.push_back(best);
    rp.gap.push_back(G[i][best]);
    if (G[i][best] && *G[i][best] < rp.threshold)
      throw PairingAmbiguous("gap below nu(P-Q)/d at root " + std::to_string(i) + "; raise cap");
  }
  return rp;
}

}  // namespace detail

inline RootPairing pair_roots(const MonicPoly& P, const MonicPoly& Q, const NpeFactorization& FP,
                              const NpeFactorization& FQ) {
  auto h = detail::check_hypothesis(P, Q);
  const int cap = std::min(FP.cap, FQ.cap), d = P.degY();
  if (static_cast<int>(FP.roots.size()) != d || static_cast<int>(FQ.roots.size()) != d)
    throw FactorCountMismatch("root count differs from the degree");
  bool symbolic = false;
  for (auto* F : {&FP, &FQ})
    for (auto& r : F->roots) symbolic = symbolic || (r.conj && 4 % r.gamma.degree() != 0);
  std::vector<std::vector<std::optional<mpq_class>>> G(d);
  if (symbolic) {
    if (!(FP.gamma == FQ.gamma) || !FP.gamma.pure)
      throw CyclotomicUnsupported("symbolic conjugates over different radicals");
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        auto v = detail::conjugate_gap(FP.roots[i], FQ.roots[j], cap);
        if (v && *v > cap) v.reset();
        G[i].push_back(v);
      }
    return detail::pair_by_gaps(G, h, d, cap);
  }
  auto cr = detail::common_roots(FP, FQ, cap);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto v = detail::vchart_valuation(detail::vchart_sub(cr.p[i], cr.q[j]), cr.gamma, cap);
      if (v && *v > cap) v.reset();
      G[i].push_back(v);
    }
  return detail::pair_by_gaps(G, h, d, cap);
}

inline RootPairing pair_roots(const MonicPoly& P, const MonicPoly& Q, int cap) {
  return pair_roots(P, Q, npe_factor(P, cap), npe_factor(Q, cap));
}

// Roots in Q(i)[[x^(1/e)]] from the Abhyankar-Jung solver.
inline RootPairing pair_roots(const MonicPoly& P, const MonicPoly& Q, const std::vector<RamifiedSeries>& rp,
                              const std::vector<RamifiedSeries>& rq) {
  auto h = detail::check_hypothesis(P, Q);
  const int d = P.degY();
  if (static_cast<int>(rp.size()) != d || static_cast<int>(rq.size()) != d)
    throw FactorCountMismatch("root count differs from the degree");
  int e = 1;
  for (auto& r : rp) e = std::lcm(e, r.ram);
  for (auto& r : rq) e = std::lcm(e, r.ram);
  auto lift = [&](const RamifiedSeries& r) { return detail::ramify_series(r.base, e / r.ram); };
  int cap = std::numeric_limits<int>::max();
  std::vector<TruncatedSeries> a, b;
  for (auto& r : rp) a.push_back(lift(r));
  for (auto& r : rq) b.push_back(lift(r));
  for (auto& s : a) cap = std::min(cap, s.cap());
  for (auto& s : b) cap = std::min(cap, s.cap());
  std::vector<std::vector<std::optional<mpq_class>>> G(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      auto o = s_order(a[i].truncated(cap) - b[j].truncated(cap));
      std::optional<mpq_class> v;
      if (o) {
        v = mpq_class(*o, e);
        v->canonicalize();
      }
      G[i].push_back(v);
    }
  return detail::pair_by_gaps(G, h, d, cap / e);
}

struct FactorMatch {
  int p_orbit = 0, q_orbit = 0;
  int degree = 0;
  std::optional<int> gap;  // nu(P_i - Q_i), none when equal at cap
};

struct FactorMatching {
  RootPairing roots;
  std::vector<FactorMatch> factors;
};

inline FactorMatching match_factors(const MonicPoly& P, const MonicPoly& Q, int cap) {
  auto FP = npe_factor(P, cap), FQ = npe_factor(Q, cap);
  FactorMatching out;
  out.roots = pair_roots(P, Q, FP, FQ);
  if (FP.orbits.size() != FQ.orbits.size()) throw FactorCountMismatch("numbers of irreducible factors differ");
  std::vector<int> orbit_of(FQ.roots.size(), -1);
  for (std::size_t o = 0; o < FQ.orbits.size(); ++o)
    for (int j : FQ.orbits[o]) orbit_of[j] = static_cast<int>(o);
  std::vector<bool> used(FQ.orbits.size(), false);
  for (std::size_t o = 0; o < FP.orbits.size(); ++o) {
    const auto& idx = FP.orbits[o];
    const int qo = orbit_of[out.roots.pair[idx.front()]];
    for (int i : idx)
      if (orbit_of[out.roots.pair[i]] != qo) throw FactorCountMismatch("paired roots split across factors of Q");
    if (FQ.orbits[qo].size() != idx.size() || used[qo]) throw FactorCountMismatch("factor degrees differ");
    used[qo] = true;
    auto fp = npe_orbit_factor_chart(FP, o, cap), fq = npe_orbit_factor_chart(FQ, qo, cap);
    FactorMatch m{static_cast<int>(o), qo, static_cast<int>(idx.size()), std::nullopt};
    for (std::size_t k = 0; k < fp.size(); ++k) {
      KSer diff = fp[k] - fq[k];
      if (diff.is_zero()) continue;
      const int v = diff.val();
      if (v <= cap && (!m.gap || v < *m.gap)) m.gap = v;
    }
    if (m.gap && mpq_class(*m.gap) < out.roots.threshold)
      throw FactorCountMismatch("factor gap below nu(P-Q)/d");
    out.factors.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------- norms

struct NormValue {
  double value = 0;
  double error = 0;  // worst-case absolute rounding error
};

inline NormValue norm_rho(const std::vector<Term>& terms, int nvars, double rho) {
  if (!(rho > 0)) throw std::invalid_argument("rho must be positive");
  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  NormValue r;
  for (auto& [e, c] : terms) {
    const double re = c.re.get_d(), im = c.im.get_d();
    const int k = exp_degree(e, nvars);
    const double t = std::hypot(re, im) * std::pow(rho, k);
    r.value += t;
    r.error += t * (k + 6) * u;
  }
  r.error += r.value * static_cast<double>(terms.size()) * u;
  return r;
}

inline NormValue norm_rho(const TruncatedSeries& f, double rho) { return norm_rho(f.terms(), f.nvars(), rho); }
inline NormValue norm_rho(const HPoly& f, double rho) { return norm_rho(f.terms(), f.nvars(), rho); }

struct MahlerReport {
  double hb = 0;        // |hb|_1
  double lhs = 0;       // |h|_1 |b|_1
  double rhs = 0;       // 2^D |hb|_1
  double ratio = 0;     // |h|_1 |b|_1 / |hb|_1
  int exponent = 0;     // D
  bool submultiplicative = false;
  bool mahler = false;
};

// D is deg h + deg b in two variables; with more variables the sum of partial degrees is used.
inline MahlerReport mahler_check(const HPoly& h, const HPoly& b) {
  if (h.is_zero() || b.is_zero()) throw std::invalid_argument("mahler_check needs nonzero polynomials");
  if (h.nvars() != b.nvars()) throw VariableMismatch("mahler_check");
  const int n = h.nvars();
  auto degsum = [&](const HPoly& p) {
    if (n <= 2) return p.degree();
    int s = 0;
    for (int i = 0; i < n; ++i) {
      int m = 0;
      for (auto& [e, c] : p.terms()) m = std::max(m, static_cast<int>(e[i]));
      s += m;
    }
    return s;
  };
  const HPoly hb = h * b;
  MahlerReport r;
  auto nh = norm_rho(h, 1.0), nb = norm_rho(b, 1.0), nhb = norm_rho(hb, 1.0);
  r.hb = nhb.value;
  r.lhs = nh.value * nb.value;
  r.exponent = degsum(h) + degsum(b);
  r.rhs = std::ldexp(nhb.value, r.exponent);
  r.ratio = r.lhs / r.hb;
  const double tol = 1e-9;
  r.submultiplicative = r.hb <= r.lhs * (1 + tol);
  r.mahler = r.lhs <= r.rhs * (1 + tol);
  return r;
}

}  // namespace pf
