#pragma once

#include <map>
#include <numeric>
#include <set>

#include "homogeneous.hpp"
#include "radical.hpp"
#include "weierstrass.hpp"

namespace pf {

struct NpeFactorization {
  HomElem gamma;
  std::vector<VGammaElem> roots;
  std::vector<std::vector<int>> orbits;
  HPoly h;
  int cap = 0;
};

namespace detail {

// Monic polynomial in z: coefficients of z^0..z^(d-1), leading 1 implicit.
using ZPoly = std::vector<FSer>;

struct Branch {
  int E = 1;  // s^E = t
  CtxPtr ctx;
  FSer y;
};

inline int zprec(const ZPoly& a) {
  int p = a.empty() ? 0 : a[0].prec;
  for (auto& c : a) p = std::min(p, c.prec);
  return p;
}

// a(z + s)
inline ZPoly zpoly_shift(const ZPoly& a, const FSer& s) {
  const int d = static_cast<int>(a.size());
  const int p = std::min(zprec(a), s.prec);
  std::vector<FSer> pw{FSer::constant(RadElem(1), p)};
  for (int k = 1; k <= d; ++k) pw.push_back(pw.back() * s);
  ZPoly r(d, FSer(p));
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j < std::min(i + 1, d); ++j) {
      FSer term = pw[i - j].scaled(RadElem(GaussRational(mpq_class(binomial(i, j)))));
      if (i < d) term = term * a[i];
      r[j] = r[j] + term;
    }
  }
  return r;
}

inline RPoly rpoly_monic(const std::vector<RadElem>& low) {
  std::vector<RadElem> c = low;
  c.emplace_back(1);
  return RPoly(std::move(c));
}

// Roots in K(theta) of a squarefree polynomial, searching r * theta^j with r in K.
inline std::vector<RadElem> find_roots(const RPoly& S, const CtxPtr& ctx) {
  std::vector<RadElem> out;
  if (!ctx) {
    std::vector<RatFunc> c;
    for (auto& x : S.coeffs()) c.push_back(x.coord(0));
    for (auto& r : roots_in_K(KPoly(c))) out.emplace_back(r);
    return out;
  }
  const int e = ctx->e;
  for (int j = 0; j < e; ++j) {
    RadElem tj = RadElem(ctx, {RatFunc(1)});
    RadElem th = RadElem::theta(ctx);
    for (int i = 0; i < j; ++i) tj = tj * th;
    std::vector<std::vector<RatFunc>> G(e, std::vector<RatFunc>(S.deg() + 1));
    RadElem pw = RadElem(ctx, {RatFunc(1)});
    for (int k = 0; k <= S.deg(); ++k) {
      RadElem t = S.coeff(k) * pw;
      for (int b = 0; b < e; ++b) G[b][k] = t.coord(b);
      pw = pw * tj;
    }
    KPoly g;
    for (auto& gb : G) {
      KPoly p(gb);
      if (p.is_zero()) continue;
      g = g.is_zero() ? p : gcd(g, p);
    }
    if (g.deg() < 1) continue;
    for (auto& r : roots_in_K(g)) {
      RadElem cand = RadElem(r) * tj;
      if (!S.eval(cand).is_zero()) continue;
      if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
    }
  }
  return out;
}

// Irreducible factor (z + sh)^m - C over K.
struct IrrFactor {
  int m;
  RatFunc C;
  RatFunc sh;
};

inline std::vector<IrrFactor> split_over_K(const KPoly& T) {
  const int m = T.deg();
  const RatFunc sh = T.coeff(m - 1) / RatFunc(m);
  KPoly Ts = T.shifted(-sh);
  bool binom = true;
  for (int k = 1; k < m; ++k) binom = binom && Ts.coeff(k).is_zero();
  if (binom) {
    RatFunc C = -Ts.coeff(0);
    if (binomial_irreducible(C, static_cast<unsigned>(m))) return {{m, C, sh}};
    if (m % 2 == 0) {
      if (auto D = kth_root(C, 2)) {
        std::vector<IrrFactor> out;
        for (int sgn : {1, -1}) {
          std::vector<RatFunc> b(m / 2 + 1);
          b[0] = -*D * RatFunc(sgn);
          b[m / 2] = RatFunc(1);
          for (auto& f : split_over_K(KPoly(b).shifted(sh))) out.push_back(f);
        }
        return out;
      }
    }
    throw BaseFieldFactorizationUnsupported("reducible binomial residue factor of degree " + std::to_string(m));
  }
  int j = 0;
  for (int k = 0; k <= m; ++k)
    if (!T.coeff(k).is_zero()) j = std::gcd(j, k);
  if (j > 1) {
    std::vector<RatFunc> u;
    for (int k = 0; k <= m; k += j) u.push_back(T.coeff(k));
    KPoly U(u);
    auto rts = roots_in_K(U);
    if (static_cast<int>(rts.size()) == U.deg()) {
      std::vector<IrrFactor> out;
      for (auto& r : rts) {
        std::vector<RatFunc> b(j + 1);
        b[0] = -r;
        b[j] = RatFunc(1);
        for (auto& f : split_over_K(KPoly(b))) out.push_back(f);
      }
      return out;
    }
  }
  throw BaseFieldFactorizationUnsupported("residue factor of degree " + std::to_string(m) +
                                          " without roots in the supported tower");
}

// Lift the coprime residue split B * Rest of the monic polynomial a; returns the factor above B.
inline ZPoly hensel_split(const ZPoly& a, const RPoly& B, const RPoly& Rest) {
  const int P = zprec(a);
  const int m = B.deg();
  auto [g, u, v] = ext_gcd(B, Rest);
  (void)u;
  if (g.deg() != 0) throw NotCoprime("residue factors share a root");
  std::vector<RPoly> U{B}, V{Rest};
  U[0] = B - RPoly::monomial(m, RadElem(1));
  V[0] = Rest - RPoly::monomial(Rest.deg(), RadElem(1));
  for (int k = 1; k <= P; ++k) {
    std::vector<RadElem> ek;
    for (auto& c : a) ek.push_back(c.at(k));
    RPoly Ek(ek);
    for (int i = 1; i < k; ++i) Ek -= U[i] * V[k - i];
    RPoly Uk = (v * Ek) % B;
    RPoly Vk = divmod(Ek - Rest * Uk, B).first;
    U.push_back(Uk);
    V.push_back(Vk);
  }
  ZPoly out(m, FSer(P));
  for (int k = 0; k <= P; ++k)
    for (int j = 0; j < m; ++j) out[j].c[k] = U[k].coeff(j);
  return out;
}

inline std::vector<Branch> solve(const ZPoly& a, int E, const CtxPtr& ctx, int depth) {
  const int d = static_cast<int>(a.size());
  if (d == 1) return {Branch{E, ctx, -a[0]}};
  if (depth > 64) throw std::logic_error("npe recursion too deep");
  FSer shift = a[d - 1].scaled(RadElem(GaussRational(mpq_class(1, d))));
  ZPoly b = zpoly_shift(a, -shift);  // b(z) = a(z - shift)
  mpq_class mu;
  bool have = false;
  for (int k = 1; k <= d; ++k) {
    const FSer& ck = b[d - k];
    int v = ck.val();
    if (v > ck.prec) continue;
    mpq_class q(v, k);
    q.canonicalize();
    if (!have || q < mu) mu = q, have = true;
  }
  if (!have) throw PrecisionExhausted("all coefficients vanish at working precision");
  for (int k = 1; k <= d; ++k) {
    const FSer& ck = b[d - k];
    if (ck.val() > ck.prec && mpq_class(ck.prec + 1, k) <= mu) throw PrecisionExhausted("slope undetermined");
  }
  const int q = static_cast<int>(mu.get_den().get_si());
  const int p = static_cast<int>(mu.get_num().get_si());
  if (q > 1) {
    for (auto& c : b) c = c.ramified(q);
    shift = shift.ramified(q);
    E *= q;
  }
  ZPoly c(d);
  for (int k = 1; k <= d; ++k) c[d - k] = b[d - k].shifted(-p * k);
  std::vector<RadElem> low;
  for (auto& x : c) low.push_back(x.at(0));
  const RPoly R = rpoly_monic(low);

  struct Block {
    RadElem root;
    int mult;
    CtxPtr ctx;
  };
  std::vector<Block> blocks;
  auto sq = squarefree_decomposition(R);
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const RPoly& S = sq[i];
    if (S.deg() < 1) continue;
    const int mult = static_cast<int>(i) + 1;
    auto roots = find_roots(S, ctx);
    RPoly rest = S;
    for (auto& r : roots) {
      blocks.push_back({r, mult, ctx});
      rest = divmod(rest, RPoly(std::vector<RadElem>{-r, RadElem(1)})).first;
    }
    if (rest.deg() > 0) {
      if (ctx) throw BaseFieldFactorizationUnsupported("residue factor needs a second radical");
      std::vector<RatFunc> kc;
      for (auto& x : rest.coeffs()) kc.push_back(x.coord(0));
      for (auto& f : split_over_K(KPoly(kc))) {
        auto nctx = std::make_shared<const RadCtx>(RadCtx{f.m, f.C});
        blocks.push_back({RadElem::theta(nctx) - RadElem(f.sh), mult, nctx});
      }
    }
  }
  if (q > 1) {
    // roots differing by a q-th root of unity give conjugate branches
    std::vector<Block> kept;
    for (auto& bl : blocks) {
      RadElem pq = bl.root.pow(q);
      bool dup = false;
      for (auto& k : kept) {
        if (k.mult != bl.mult) continue;
        RadElem kq = k.root.pow(q);
        if (k.ctx == bl.ctx) dup = dup || kq == pq;
        else dup = dup || (kq.in_base() && pq.in_base() && kq.coord(0) == pq.coord(0));
      }
      if (!dup) kept.push_back(bl);
    }
    blocks = std::move(kept);
  }

  std::vector<Branch> out;
  for (auto& bl : blocks) {
    RPoly B = RPoly(std::vector<RadElem>{-bl.root, RadElem(1)}).pow(static_cast<unsigned>(bl.mult));
    RPoly Rest = divmod(R, B).first;
    ZPoly Qb = Rest.deg() == 0 ? c : hensel_split(c, B, Rest);
    std::vector<Branch> zs;
    if (bl.mult == 1) {
      zs.push_back(Branch{E, bl.ctx, -Qb[0]});
    } else {
      ZPoly Qs = zpoly_shift(Qb, FSer::constant(bl.root, zprec(Qb)));
      for (auto& br : solve(Qs, E, bl.ctx, depth + 1)) {
        br.y = br.y + FSer::constant(bl.root, br.y.prec);
        zs.push_back(std::move(br));
      }
    }
    for (auto& z : zs) {
      const int r = z.E / E;
      FSer y = z.y.shifted(p * r);
      FSer sh = r > 1 ? shift.ramified(r) : shift;
      out.push_back(Branch{z.E, z.ctx, y - sh});
    }
  }
  return out;
}

// ---------------------------------------------------------------- orbit data

struct OrbitRep {
  HomElem gamma;
  std::vector<KSer> A;  // coefficients of gamma^k in the chart
  int orbit_size = 1;
};

inline OrbitRep branch_to_orbit(const Branch& br, int nvars) {
  const int E = br.E;
  const int ep = br.ctx ? br.ctx->e : 1;
  const FSer& y = br.y;
  // support group in Z_E x Z_ep
  std::set<std::pair<int, int>> gens;
  for (int j = 0; j <= y.prec; ++j)
    for (int b = 0; b < ep; ++b)
      if (!y.c[j].coord(b).is_zero()) gens.insert({j % E, b});
  std::set<std::pair<int, int>> G{{0, 0}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int, int>> add;
    for (auto& g : G)
      for (auto& h : gens) {
        std::pair<int, int> s{(g.first + h.first) % E, (g.second + h.second) % ep};
        if (!G.count(s)) add.push_back(s);
      }
    for (auto& s : add) grew |= G.insert(s).second;
  }
  const int order = static_cast<int>(G.size());
  std::pair<int, int> gen{0, 0};
  if (order > 1) {
    bool found = false;
    for (auto& g : G) {
      int o = 1;
      std::pair<int, int> cur = g;
      while (cur != std::pair<int, int>{0, 0}) {
        cur = {(cur.first + g.first) % E, (cur.second + g.second) % ep};
        ++o;
      }
      if (o == order) {
        gen = g;
        found = true;
        break;
      }
    }
    if (!found) throw NonPureUnsupported("root field is not generated by a single pure radical");
  }
  const int N = order;
  const auto [ga, gb] = gen;
  std::map<std::pair<int, int>, int> kof;
  {
    std::pair<int, int> cur{0, 0};
    for (int k = 0; k < N; ++k) {
      kof[cur] = k;
      cur = {(cur.first + ga) % E, (cur.second + gb) % ep};
    }
  }
  const int D0 = ga * N / E;
  RatFunc C(1);
  if (gb) C = RadElem(br.ctx ? br.ctx->c : RatFunc(1)).pow(static_cast<long>(gb) * N / ep).coord(0);
  const UPoly Dn = C.den();
  const UPoly Pn = C.num() * Dn.pow(static_cast<unsigned>(N - 1));
  int m = 0;
  {
    int need = Pn.deg() - D0;
    m = need >= 0 ? (need + N - 1) / N : -((-need) / N);
  }
  const int Dg = D0 + m * N;
  OrbitRep rep;
  rep.gamma = N == 1 ? trivial_gamma(nvars) : pure_gamma(homogenize(Pn, Dg, nvars), N);
  const mpq_class omega = rep.gamma.omega;
  const RatFunc cc = br.ctx ? br.ctx->c : RatFunc(1);
  const RatFunc Dr(Dn);
  std::vector<int> lo(N, 0);
  for (int j = 0; j <= y.prec; ++j)
    for (int b = 0; b < ep; ++b) {
      if (y.c[j].coord(b).is_zero()) continue;
      int k = kof.at({j % E, b});
      lo[k] = std::min(lo[k], (j - k * ga) / E - k * m);
    }
  for (int k = 0; k < N; ++k) {
    mpq_class top = mpq_class(y.prec + 1, E) - omega * k;
    // largest integer strictly below top
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), top.get_num_mpz_t(), top.get_den_mpz_t());
    if (mpq_class(fl) == top) fl -= 1;
    rep.A.emplace_back(lo[k], static_cast<int>(fl.get_si()));
  }
  for (int j = 0; j <= y.prec; ++j)
    for (int b = 0; b < ep; ++b) {
      const RatFunc v = y.c[j].coord(b);
      if (v.is_zero()) continue;
      int k = kof.at({j % E, b});
      int et = (j - k * ga) / E - k * m;
      if (et > rep.A[k].prec) continue;
      int cpow = (b - k * gb) / ep;
      RatFunc f = v * RadElem(cc).pow(cpow).coord(0);
      if (k) f = f / PhElem::pow_rf(Dr, k);
      rep.A[k].set(et, rep.A[k].at(et) + f);
    }
  int g = N;
  for (int k = 1; k < N; ++k)
    if (!rep.A[k].is_zero()) g = std::gcd(g, k);
  rep.orbit_size = N / g;
  return rep;
}


// ---------------------------------------------------------------- chart algebra over gamma

inline VChart vchart_add(const VChart& a, const VChart& b) {
  VChart r;
  for (std::size_t k = 0; k < std::max(a.A.size(), b.A.size()); ++k) {
    if (k >= a.A.size()) r.A.push_back(b.A[k]);
    else if (k >= b.A.size()) r.A.push_back(a.A[k]);
    else r.A.push_back(a.A[k] + b.A[k]);
  }
  return r;
}

inline VChart vchart_scale(const VChart& a, const RatFunc& c) {
  VChart r = a;
  for (auto& x : r.A) x = x.scaled(c);
  return r;
}

inline VChart vchart_const(const KSer& a, int d, int prec) {
  VChart r;
  r.A.push_back(a);
  for (int k = 1; k < d; ++k) r.A.emplace_back(0, prec);
  return r;
}

// sum_k A_k X^k in Q(x)(gamma0), X given over gamma0.
inline VChart vchart_compose(const std::vector<KSer>& A, const VChart& X, const HomElem& g0, int prec) {
  const int d0 = g0.degree();
  VChart acc = vchart_const(A.back(), d0, prec);
  for (std::size_t k = A.size() - 1; k-- > 0;) acc = vchart_add(vchart_mul(acc, X, g0, prec), vchart_const(A[k], d0, prec));
  return acc;
}

inline KSer exact_chart(const PhElem& a, int prec) {
  KSer s = a.chart();
  if (a.is_zero()) return KSer(0, prec);
  return s.with_range(std::min(s.lo, s.val()), prec);
}

inline int floor_q(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return static_cast<int>(f.get_si());
}

struct RootChart {
  VChart xi;
  int conj = 0;
};

struct Assembled {
  HomElem gamma;
  std::vector<RootChart> roots;
  std::vector<std::vector<int>> orbits;
};

inline Assembled assemble(const std::vector<OrbitRep>& reps, int nvars, int prec, std::uint64_t seed) {
  // common gamma and expressions of every distinct gamma in it
  HomElem g0 = trivial_gamma(nvars);
  std::vector<std::pair<HomElem, VChart>> known;
  auto unit_expr = [&](const HomElem& g) {
    VChart x;
    for (int k = 0; k < g.degree(); ++k) {
      KSer s(0, prec);
      if (k == 1) s.set(0, RatFunc(1));
      x.A.push_back(s);
    }
    if (g.degree() == 1) x.A[0] = KSer::constant(RatFunc(1), prec);
    return x;
  };
  auto to_vchart_exact = [&](const VGammaElem& v) {
    VChart x;
    for (auto& a : v.A) x.A.push_back(exact_chart(a, prec));
    return x;
  };
  for (auto& r : reps) {
    if (r.gamma.is_trivial()) continue;
    bool seen = false;
    for (auto& kv : known) seen = seen || kv.first == r.gamma;
    if (seen) continue;
    if (known.empty()) {
      g0 = r.gamma;
      known.push_back({r.gamma, unit_expr(r.gamma)});
      continue;
    }
    PrimitiveResult pr = primitive_element(g0, r.gamma, seed);
    VChart e1 = to_vchart_exact(pr.expr1), e2 = to_vchart_exact(pr.expr2);
    if (!(pr.gamma0 == g0)) {
      for (auto& kv : known) kv.second = vchart_compose(kv.second.A, e1, pr.gamma0, prec);
      g0 = pr.gamma0;
    }
    known.push_back({r.gamma, e2});
  }
  const bool merged = known.size() > 1;
  const int d0 = g0.degree();
  Assembled out;
  out.gamma = g0;
  for (auto& r : reps) {
    std::vector<int> orbit;
    const int N = r.gamma.degree();
    const int step = N / r.orbit_size;
    if (r.gamma.is_trivial()) {
      out.roots.push_back({vchart_const(r.A[0], d0, prec), 0});
      orbit.push_back(static_cast<int>(out.roots.size()) - 1);
      out.orbits.push_back(orbit);
      continue;
    }
    const VChart* X = nullptr;
    for (auto& kv : known)
      if (kv.first == r.gamma) X = &kv.second;
    for (int j = 0; j < r.orbit_size; ++j) {
      const int jj = j * step;  // gamma -> zeta_N^jj gamma
      std::vector<KSer> A = r.A;
      int conj = 0;
      if (4 % N == 0) {
        GaussRational zeta = N == 1 ? GaussRational(1) : N == 2 ? GaussRational(-1) : GaussRational::I();
        for (int k = 0; k < N; ++k) A[k] = A[k].scaled(RatFunc(pow(zeta, static_cast<unsigned>((jj * k) % N))));
      } else if (merged) {
        throw CyclotomicUnsupported("conjugates of a merged radical of degree " + std::to_string(N));
      } else {
        if (N > kMaxCyclotomic) throw CyclotomicUnsupported("conjugation needs zeta_" + std::to_string(N));
        conj = jj;
      }
      VChart xi = merged ? vchart_compose(A, *X, g0, prec) : VChart{A};
      out.roots.push_back({xi, conj});
      orbit.push_back(static_cast<int>(out.roots.size()) - 1);
    }
    out.orbits.push_back(orbit);
  }
  return out;
}

}  // namespace detail

// Factor P over the valued extension; roots carry a common homogeneous element gamma.
inline NpeFactorization npe_factor(const MonicPoly& P, int cap, std::uint64_t seed = 0) {
  const int n = P.nvars(), d = P.degY();
  if (n > 2) throw NotSupported("npe_factor supports at most two variables");
  if (cap < 0) throw std::invalid_argument("cap must be non-negative");
  const MonicPoly Pt = P.truncated(std::min(cap, P.cap()));
  if (discriminant(Pt).is_zero()) throw NotReduced("discriminant vanishes up to cap");
  const int margin = 2;
  for (int W = cap + margin + 2, attempt = 0; attempt < 6; W *= 2, ++attempt) {
    detail::ZPoly a(d);
    for (int k = 1; k <= d; ++k) {
      detail::FSer s(W);
      KSer ch = chart_of(Pt.a(k));
      for (int j = 0; j <= std::min(W, ch.prec); ++j) s.c[j] = detail::RadElem(ch.at(j));
      a[d - k] = s;
    }
    std::vector<detail::Branch> branches;
    try {
      branches = detail::solve(a, 1, nullptr, 0);
    } catch (const PrecisionExhausted&) {
      continue;
    }
    std::vector<detail::OrbitRep> reps;
    int total = 0;
    for (auto& b : branches) {
      reps.push_back(detail::branch_to_orbit(b, n));
      total += reps.back().orbit_size;
    }
    if (total != d) continue;
    const int prec = cap + margin;
    bool enough = true;
    for (auto& r : reps)
      for (int k = 0; k < static_cast<int>(r.A.size()); ++k)
        if (r.A[k].prec < detail::floor_q(mpq_class(prec) - r.gamma.omega * k)) enough = false;
    if (!enough) continue;
    detail::Assembled as = detail::assemble(reps, n, prec + 64, seed);
    NpeFactorization F;
    F.gamma = as.gamma;
    F.orbits = as.orbits;
    F.cap = cap;
    std::vector<KSer> all;
    std::vector<std::vector<KSer>> trimmed;
    for (auto& rc : as.roots) {
      std::vector<KSer> t;
      for (int k = 0; k < static_cast<int>(rc.xi.A.size()); ++k) {
        int ck = detail::floor_q(mpq_class(cap) - F.gamma.omega * k);
        const KSer& s = rc.xi.A[k];
        if (s.prec < ck) enough = false;
        KSer u = s.with_range(std::min(0, std::min(s.val(), ck + 1)), ck);
        t.push_back(u);
        all.push_back(u);
      }
      trimmed.push_back(t);
    }
    if (!enough) continue;
    F.h = choose_h(all, n);
    for (std::size_t i = 0; i < trimmed.size(); ++i) {
      VGammaElem v{F.gamma, {}, as.roots[i].conj};
      for (auto& s : trimmed[i]) v.A.push_back(ph_from_chart(s, F.h, n, true));
      F.roots.push_back(std::move(v));
    }
    return F;
  }
  throw PrecisionExhausted("npe_factor did not reach cap " + std::to_string(cap));
}

// Orbit factor prod_{xi in orbit} (y - xi) in the chart, as coefficients of y^0..y^o (monic).
inline std::vector<KSer> npe_orbit_factor_chart(const NpeFactorization& F, std::size_t orbit, int prec) {
  const auto& idx = F.orbits.at(orbit);
  const HomElem& g = F.gamma;
  const int d0 = g.degree();
  bool symbolic = false;
  for (int i : idx) symbolic = symbolic || F.roots[i].conj != 0;
  auto chart_of_root = [&](int i) {
    VChart x;
    for (auto& a : F.roots[i].A) x.A.push_back(a.chart());
    return x;
  };
  if (!symbolic) {
    std::vector<VChart> poly{detail::vchart_const(KSer::constant(RatFunc(1), prec), d0, prec)};
    for (int i : idx) {
      VChart xi = chart_of_root(i);
      std::vector<VChart> next(poly.size() + 1, detail::vchart_const(KSer(0, prec), d0, prec));
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j + 1] = detail::vchart_add(next[j + 1], poly[j]);
        next[j] = detail::vchart_add(next[j], detail::vchart_scale(vchart_mul(poly[j], xi, g, prec), RatFunc(-1)));
      }
      poly = std::move(next);
    }
    std::vector<KSer> out;
    for (auto& c : poly) {
      for (int k = 1; k < d0; ++k)
        if (!c.A[k].with_range(c.A[k].lo, std::min(c.A[k].prec, prec)).is_zero())
          throw std::logic_error("orbit product does not descend to the base");
      out.push_back(c.A[0]);
    }
    return out;
  }
  // symbolic conjugates: characteristic polynomial of multiplication by the representative
  const VChart xi = chart_of_root(idx.front());
  const int o = static_cast<int>(idx.size());
  const int step = d0 / o;
  const KSer gN = [&] {
    KSer s(0, prec);
    const HPoly r = g.radicand();
    if (r.degree() <= prec) s.set(r.degree(), chart_of(r));
    return s;
  }();
  Matrix<KSer> M(o, std::vector<KSer>(o, KSer(0, prec)));
  for (int col = 0; col < o; ++col)
    for (int k = 0; k < d0; ++k) {
      if (xi.A[k].is_zero()) continue;
      if (k % step) throw std::logic_error("orbit support mismatch");
      int e = k / step + col;
      KSer v = xi.A[k];
      while (e >= o) {
        e -= o;
        v = v * gN;
      }
      M[e][col] = M[e][col] + v;
    }
  auto cp = berkowitz_charpoly(M, KSer(0, prec), KSer::constant(RatFunc(1), prec));
  return std::vector<KSer>(cp.rbegin(), cp.rend());
}

// Product of all orbit factors, as a monic polynomial over the base series ring.
inline MonicPoly npe_product(const NpeFactorization& F, int nvars) {
  std::vector<KSer> prod{KSer::constant(RatFunc(1), F.cap)};
  for (std::size_t i = 0; i < F.orbits.size(); ++i) {
    auto f = npe_orbit_factor_chart(F, i, F.cap);
    std::vector<KSer> next(prod.size() + f.size() - 1, KSer(0, F.cap));
    for (std::size_t a = 0; a < prod.size(); ++a)
      for (std::size_t b = 0; b < f.size(); ++b) next[a + b] = next[a + b] + prod[a] * f[b];
    prod = std::move(next);
  }
  std::vector<TruncatedSeries> c;
  for (auto& k : prod) c.push_back(series_of_chart(k.with_range(0, F.cap), nvars));
  return MonicPoly::from_y_coeffs(c);
}

}  // namespace pf
