#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "berkowitz.hpp"
#include "modular.hpp"
#include "morphism.hpp"
#include "weierstrass.hpp"

namespace pf {

// Maximal nonzero minor of the truncated Jacobian.
inline int generic_rank(const Morphism& phi) {
  if (phi.cap() < 2) throw CapTooSmall("generic rank needs cap >= 2");
  std::vector<std::vector<TruncatedSeries>> J(phi.n);
  for (int i = 0; i < phi.n; ++i)
    for (int j = 0; j < phi.m; ++j) J[i].push_back(s_derivative(phi.phi[i], j));
  const int cap = phi.cap() - 1;
  const TruncatedSeries zero(phi.m, cap), one = TruncatedSeries::constant(phi.m, cap, GaussRational(1));

  auto subsets = [](int n, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(r);
    auto rec = [&](auto&& self, int i, int start) -> void {
      if (i == r) { out.push_back(s); return; }
      for (int k = start; k < n; ++k) { s[i] = k; self(self, i + 1, k + 1); }
    };
    rec(rec, 0, 0);
    return out;
  };
  for (int r = std::min(phi.n, phi.m); r >= 1; --r)
    for (auto& rows : subsets(phi.n, r))
      for (auto& cols : subsets(phi.m, r)) {
        std::vector<std::vector<TruncatedSeries>> A(r);
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) A[a].push_back(J[rows[a]][cols[b]]);
        if (!berkowitz_det(A, zero, one).is_zero()) return r;
      }
  return 0;
}

// Monomials of degree <= D in n variables, graded and ascending (x1 > x2 > ... inside a degree).
inline std::vector<Exp> graded_monomials(int n, int D) {
  std::vector<Exp> out;
  for (int d = 0; d <= D; ++d) {
    std::vector<Exp> deg;
    Exp e{};
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == n - 1) { e[i] = static_cast<std::uint8_t>(left); deg.push_back(e); return; }
      for (int a = left; a >= 0; --a) { e[i] = static_cast<std::uint8_t>(a); self(self, i + 1, left - a); }
    };
    rec(rec, 0, d);
    out.insert(out.end(), deg.rbegin(), deg.rend());
  }
  return out;
}

struct KernelResult {
  std::vector<TruncatedSeries> basis;  // polynomials in x of degree <= degX
  int degX = 0, capU = 0;
  int rank = 0;                        // rank of the constraint system
  int primes = 0;
};

namespace detail {

// Dense index of monomials of degree <= T in m variables, graded, lex-descending inside a degree.
class MonoIndex {
public:
  MonoIndex(int m, int T) : m_(m), T_(T), binom_(T + m + 2, std::vector<long>(m + 2, 0)) {
    for (int a = 0; a < static_cast<int>(binom_.size()); ++a) {
      binom_[a][0] = 1;
      for (int b = 1; b <= std::min(a, m + 1); ++b) binom_[a][b] = binom_[a - 1][b - 1] + (b <= a - 1 ? binom_[a - 1][b] : 0);
    }
    size_ = static_cast<int>(C(T + m, m));
  }
  int size() const { return size_; }
  int T() const { return T_; }
  long rank(const Exp& e) const {
    int d = exp_degree(e, m_);
    long r = d ? C(d - 1 + m_, m_) : 0;
    int rem = d;
    for (int i = 0; i + 1 < m_; ++i) {
      int k = m_ - i - 1;
      if (rem - e[i] >= 1) r += C(rem - e[i] - 1 + k, k);
      rem -= e[i];
    }
    return r;
  }

private:
  long C(int a, int b) const { return a < 0 || b < 0 || b > a ? 0 : binom_[a][b]; }
  int m_, T_, size_;
  std::vector<std::vector<long>> binom_;
};

}  // namespace detail

// Polynomial relations K of degree <= D with K(phi) = 0 through degree T, as an echelon basis.
inline KernelResult kernel_search(const Morphism& phi, int D, int T) {
  if (T > phi.cap()) throw CapTooSmall("morphism known only through degree " + std::to_string(phi.cap()));
  const int n = phi.n, m = phi.m;
  std::vector<TruncatedSeries> comps;
  bool complex = false;
  for (auto& f : phi.phi) {
    comps.push_back(f.truncated(T));
    for (auto& [e, c] : comps.back().terms()) complex = complex || c.im != 0;
  }
  const std::vector<Exp> mons = graded_monomials(n, D);
  const int C = static_cast<int>(mons.size());
  std::map<Exp, int> col;
  for (int j = 0; j < C; ++j) col[mons[j]] = j;
  std::vector<int> pred(C, -1), pvar(C, -1);
  for (int j = 1; j < C; ++j)
    for (int i = 0; i < n; ++i)
      if (mons[j][i]) {
        Exp q = mons[j];
        --q[i];
        pred[j] = col.at(q);
        pvar[j] = i;
        break;
      }
  detail::MonoIndex idx(m, T);

  // exact images, built lazily along the predecessor chain
  std::map<int, TruncatedSeries> exact;
  auto exact_image = [&](auto&& self, int j) -> const TruncatedSeries& {
    auto it = exact.find(j);
    if (it != exact.end()) return it->second;
    TruncatedSeries v = j == 0 ? TruncatedSeries::constant(m, T, GaussRational(1)) : s_mul(self(self, pred[j]), comps[pvar[j]]);
    return exact.emplace(j, std::move(v)).first->second;
  };

  struct ModRun {
    std::vector<int> rank_piv, ker_piv;
    std::vector<std::vector<detail::u64>> ker;
  };
  auto run = [&](const detail::ModPrime& P, bool conj) -> std::optional<ModRun> {
    const detail::u64 p = P.p;
    std::vector<std::vector<std::pair<long, detail::u64>>> phim(n);
    for (int i = 0; i < n; ++i)
      for (auto& [e, c] : comps[i].terms()) {
        auto r = detail::reduce_mod(c, P, conj);
        if (!r) return std::nullopt;
        if (*r) phim[i].emplace_back(idx.rank(e), *r);
      }
    // exponent of each dense index, for products
    std::vector<Exp> expo(idx.size());
    for (int d = 0; d <= T; ++d) {
      Exp e{};
      auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) { e[i] = static_cast<std::uint8_t>(left); expo[idx.rank(e)] = e; return; }
        for (int a = left; a >= 0; --a) { e[i] = static_cast<std::uint8_t>(a); self(self, i + 1, left - a); }
      };
      rec(rec, 0, d);
    }
    std::vector<std::vector<std::pair<Exp, detail::u64>>> phix(n);
    for (int i = 0; i < n; ++i)
      for (auto& [r, c] : phim[i]) phix[i].emplace_back(expo[r], c);
    std::vector<std::vector<detail::u64>> img(C);
    img[0].assign(idx.size(), 0);
    img[0][0] = 1;
    for (int j = 1; j < C; ++j) {
      img[j].assign(idx.size(), 0);
      const auto& src = img[pred[j]];
      for (int a = 0; a < idx.size(); ++a) {
        if (!src[a]) continue;
        const int da = exp_degree(expo[a], m);
        for (auto& [e, c] : phix[pvar[j]]) {
          if (da + exp_degree(e, m) > T) continue;
          long t = idx.rank(exp_add(expo[a], e));
          img[j][t] = detail::add_mod(img[j][t], detail::mul_mod(src[a], c, p), p);
        }
      }
    }
    std::vector<std::vector<detail::u64>> M;
    for (int a = 0; a < idx.size(); ++a) {
      std::vector<detail::u64> row(C);
      bool nz = false;
      for (int j = 0; j < C; ++j) { row[j] = img[j][a]; nz = nz || row[j]; }
      if (nz) M.push_back(std::move(row));
    }
    ModRun out;
    out.rank_piv = detail::rref_mod(M, C, p);
    out.ker = detail::kernel_rref_mod(M, out.rank_piv, C, p);
    for (auto& v : out.ker) {
      int k = 0;
      while (v[k] == 0) ++k;
      out.ker_piv.push_back(k);
    }
    return out;
  };

  KernelResult res;
  res.degX = D;
  res.capU = T;
  int best_rank = -1;
  std::vector<int> piv;
  std::vector<std::vector<mpz_class>> acc_re, acc_im;
  mpz_class M = 1;
  const int max_primes = 48;
  for (int k = 0; k < max_primes; ++k) {
    const auto& P = detail::mod_prime(k);
    auto a = run(P, false);
    if (!a) continue;
    std::optional<ModRun> b;
    if (complex) {
      b = run(P, true);
      if (!b || b->rank_piv != a->rank_piv || b->ker_piv != a->ker_piv) continue;
    }
    const int rk = static_cast<int>(a->rank_piv.size());
    if (rk < best_rank) continue;
    if (rk == best_rank && a->ker_piv != piv) continue;
    if (rk > best_rank) {
      best_rank = rk;
      piv = a->ker_piv;
      M = 1;
      acc_re.assign(piv.size(), std::vector<mpz_class>(C, 0));
      acc_im.assign(piv.size(), std::vector<mpz_class>(C, 0));
    }
    res.primes = k + 1;
    res.rank = best_rank;
    if (piv.empty()) return res;

    // CRT step
    const mpz_class pz(static_cast<unsigned long>(P.p));
    const detail::u64 inv2 = detail::inv_mod(2, P.p), inv2s = detail::inv_mod(detail::mul_mod(2, P.s, P.p), P.p);
    mpz_class Minv;
    mpz_class Mp = M % pz;
    mpz_invert(Minv.get_mpz_t(), Mp.get_mpz_t(), pz.get_mpz_t());
    auto crt = [&](mpz_class& acc, detail::u64 r) {
      mpz_class d = (mpz_class(static_cast<unsigned long>(r)) - acc) % pz;
      if (d < 0) d += pz;
      d = d * Minv % pz;
      acc += M * d;
    };
    for (std::size_t r = 0; r < piv.size(); ++r)
      for (int j = 0; j < C; ++j) {
        detail::u64 x = a->ker[r][j];
        detail::u64 re = x, im = 0;
        if (complex) {
          detail::u64 y = b->ker[r][j];
          re = detail::mul_mod(detail::add_mod(x, y, P.p), inv2, P.p);
          im = detail::mul_mod(detail::sub_mod(x, y, P.p), inv2s, P.p);
        }
        crt(acc_re[r][j], re);
        crt(acc_im[r][j], im);
      }
    M *= pz;

    // reconstruct and verify exactly
    std::vector<TruncatedSeries> basis;
    bool ok = true;
    for (std::size_t r = 0; r < piv.size() && ok; ++r) {
      std::vector<Term> terms;
      TruncatedSeries image(m, T);
      for (int j = 0; j < C && ok; ++j) {
        if (acc_re[r][j] == 0 && acc_im[r][j] == 0) continue;
        auto re = detail::reconstruct_or_zero(acc_re[r][j], M, ok);
        auto im = detail::reconstruct_or_zero(acc_im[r][j], M, ok);
        if (!ok) break;
        GaussRational c(re, im);
        if (c.is_zero()) continue;
        terms.emplace_back(mons[j], c);
        image += exact_image(exact_image, j).scaled(c);
      }
      if (ok && !image.is_zero()) ok = false;
      if (ok) basis.push_back(TruncatedSeries::from_terms(n, D, terms));
    }
    if (ok) {
      res.basis = std::move(basis);
      return res;
    }
  }
  throw PrecisionExhausted("kernel reconstruction did not stabilize");
}

// x1 -> sum lambda_j x_j (j >= 2) in every coefficient; the result lives in x2..xn.
inline MonicPoly hyperplane_restrict(const MonicPoly& P, const std::vector<GaussRational>& lambda) {
  const int n = P.nvars();
  if (n < 2) throw NotSupported("hyperplane restriction needs at least two variables");
  if (static_cast<int>(lambda.size()) != n - 1) throw VariableMismatch("one coefficient per remaining variable");
  const int cap = P.cap();
  std::vector<TruncatedSeries> img;
  TruncatedSeries l(n - 1, cap);
  for (int j = 0; j < n - 1; ++j) l += TruncatedSeries::var(n - 1, cap, j).scaled(lambda[j]);
  img.push_back(l);
  for (int j = 0; j < n - 1; ++j) img.push_back(TruncatedSeries::var(n - 1, cap, j));
  std::vector<TruncatedSeries> c;
  for (auto& a : P.coeffs) c.push_back(s_subst(a, img));
  return MonicPoly(c);
}

// x_i -> u^(column i of M); rows of M index the target variables.
inline TruncatedSeries monomial_substitute(const TruncatedSeries& f, const std::vector<std::vector<int>>& M) {
  const int m = static_cast<int>(M.size());
  if (m == 0) throw VariableMismatch("empty exponent matrix");
  std::vector<TruncatedSeries> img;
  for (int i = 0; i < f.nvars(); ++i) {
    Exp e{};
    for (int k = 0; k < m; ++k) e[k] = static_cast<std::uint8_t>(M[k].at(i));
    img.push_back(s_monomial(m, f.cap(), e));
  }
  return s_subst(f, img);
}

inline TruncatedSeries exp_series(int nvars, int var, int cap) {
  std::vector<Term> t;
  mpz_class f = 1;
  for (int i = 0; i <= cap; ++i) {
    if (i) f *= i;
    Exp e{};
    e[var] = static_cast<std::uint8_t>(i);
    t.emplace_back(e, GaussRational(mpq_class(1, f)));
  }
  return TruncatedSeries::from_terms(nvars, cap, t);
}

// (u, uv, uv e^v)
inline Morphism example_osgood(int cap) {
  auto u = TruncatedSeries::var(2, cap, 0), v = TruncatedSeries::var(2, cap, 1);
  auto uv = s_mul(u, v);
  return Morphism({u, uv, s_mul(uv, exp_series(2, 1, cap))});
}

// f_n = (x3 - x2 sum_{i<=n} x2^i / (i! x1^i)) x1^n
inline TruncatedSeries gabrielov_f(int n, int cap) {
  std::vector<Term> t;
  Exp e{};
  e[0] = static_cast<std::uint8_t>(n);
  e[2] = 1;
  t.emplace_back(e, GaussRational(1));
  mpz_class f = 1;
  for (int i = 0; i <= n; ++i) {
    if (i) f *= i;
    Exp x{};
    x[0] = static_cast<std::uint8_t>(n - i);
    x[1] = static_cast<std::uint8_t>(i + 1);
    t.emplace_back(x, GaussRational(mpq_class(-1, f)));
  }
  return TruncatedSeries::from_terms(3, cap, t);
}

// psi = (u, uv, uv e^v, h) with h = sum_{n<=N} (n+1)! phi(f_n)
inline Morphism example_gabrielov(int cap, int N) {
  if (cap < N + 2) throw CapTooSmall("gabrielov example needs cap >= N + 2");
  Morphism o = example_osgood(cap);
  TruncatedSeries h(2, cap);
  mpz_class f = 1;
  for (int n = 0; n <= N; ++n) {
    f *= n + 1;
    h += s_subst(gabrielov_f(n, cap), o.phi).scaled(GaussRational(f));
  }
  return Morphism({o.phi[0], o.phi[1], o.phi[2], h});
}

struct Transform {
  std::string kind;
  std::string detail;
};

struct PreparedMorphism {
  Morphism phi;
  std::vector<Transform> log;
  std::string form;         // "iii", "iv" or "v"
  int rank = 0;
  std::vector<int> a;       // u1-exponents of phi(x_j), j >= 2
  int b = 0;                // u2-exponent in form iv
};

namespace detail {

inline std::string gauss_str(const GaussRational& c) {
  std::ostringstream os;
  os << c;
  return os.str();
}

// Substitute (u1, u2) -> (g1, g2) in every component.
inline std::vector<TruncatedSeries> compose_target(const std::vector<TruncatedSeries>& v, const TruncatedSeries& g1,
                                                   const TruncatedSeries& g2) {
  std::vector<TruncatedSeries> out;
  for (auto& f : v) out.push_back(s_subst(f, {g1, g2}));
  return out;
}

// G with G * V(G, u2) = u1 (which = 0) or u2 * V(u1, G) = ... for which = 1.
inline TruncatedSeries invert_scaling(const TruncatedSeries& V, int which) {
  const int cap = V.cap() + 1;
  TruncatedSeries t = TruncatedSeries::var(2, cap, which), other = TruncatedSeries::var(2, cap, 1 - which);
  TruncatedSeries G = t;
  for (int it = 0; it <= cap; ++it) {
    std::vector<TruncatedSeries> args = which == 0 ? std::vector<TruncatedSeries>{G, other} : std::vector<TruncatedSeries>{other, G};
    TruncatedSeries Vg = s_subst(V, args);
    G = shift_by_monomial(s_inv_unit(Vg), exp_unit(which));
  }
  return G;
}

inline int u1_power(const TruncatedSeries& f) {
  int a = 255;
  for (auto& [e, c] : f.terms()) a = std::min<int>(a, e[0]);
  return a;
}

}  // namespace detail

// Quadratic transforms, power substitutions and isomorphisms bringing phi (target dimension 2) to normal form.
inline PreparedMorphism prepare_morphism(const Morphism& phi0) {
  if (phi0.m != 2) throw NotSupported("preparation implemented for two target variables");
  PreparedMorphism out;
  out.rank = generic_rank(phi0);
  if (out.rank == 0) throw NotSupported("morphism of generic rank zero");
  std::vector<TruncatedSeries> v = phi0.phi;
  const int n = phi0.n;
  auto u1 = [&](int cap) { return TruncatedSeries::var(2, cap, 0); };
  auto u2 = [&](int cap) { return TruncatedSeries::var(2, cap, 1); };
  auto common_cap = [&]() {
    int c = v[0].cap();
    for (auto& f : v) c = std::min(c, f.cap());
    for (auto& f : v) f = f.truncated(c);
    return c;
  };

  auto oi = s_order_initial(v[0]);
  if (!oi.order) throw NotSupported("phi(x1) vanishes up to cap");
  const int e = *oi.order;
  if (e == 0) throw ConstantTermNonzero("phi(x1)");
  const HPoly in1 = *oi.initial;
  Exp pure{};
  pure[0] = static_cast<std::uint8_t>(e);
  if (in1.coeff(pure).is_zero()) {
    int c = 1;
    while (in1.evaluate({GaussRational(1), GaussRational(c)}).is_zero()) ++c;
    int cap = common_cap();
    v = detail::compose_target(v, u1(cap), u2(cap) + u1(cap).scaled(GaussRational(c)));
    out.log.push_back({"linear", "u2 -> u2 + " + std::to_string(c) + "*u1"});
  }
  auto mu = is_monomial_unit(v[0]);
  if (!mu || mu->alpha[0] != e || mu->alpha[1] != 0) {
    int cap = common_cap();
    v = detail::compose_target(v, u1(cap), s_mul(u1(cap), u2(cap)));
    out.log.push_back({"quadratic", "u2 -> u1*u2"});
    mu = is_monomial_unit(v[0]);
    if (!mu || mu->alpha[0] != e || mu->alpha[1] != 0) throw PrecisionExhausted("phi(x1) not u1^e times a unit at cap");
  }
  TruncatedSeries U = mu->unit;
  const GaussRational c0 = U.constant_term();
  if (!c0.is_one()) {
    U = U.scaled(c0.inv());
    v[0] = v[0].scaled(c0.inv());
    out.log.push_back({"scale", "x1 -> x1 / (" + detail::gauss_str(c0) + ")"});
  }
  TruncatedSeries V = U;
  if (e > 1) {
    V = s_root_unit(U, static_cast<unsigned>(e));
    out.log.push_back({"power_substitution", "x1 -> x1^" + std::to_string(e)});
  }
  Exp one{};
  one[0] = 1;
  v[0] = shift_by_monomial(V, one);
  if (V != TruncatedSeries::constant(2, V.cap(), GaussRational(1))) {
    int cap = std::min(common_cap(), V.cap() + 1);
    TruncatedSeries G = detail::invert_scaling(V.truncated(cap - 1), 0);
    v = detail::compose_target(v, G, u2(cap));
    out.log.push_back({"target_isomorphism", "u1 -> inverse of u1*V(u)"});
  }
  common_cap();
  if (v[0] != u1(v[0].cap())) throw PrecisionExhausted("failed to normalize phi(x1) at cap");

  for (int j = 1; j < n; ++j) {
    std::vector<Term> t;
    for (auto& [ex, c] : v[j].terms())
      if (ex[1] == 0) t.emplace_back(ex, c);
    if (t.empty()) continue;
    v[j] -= TruncatedSeries::from_terms(2, v[j].cap(), t);
    out.log.push_back({"source_isomorphism", "x" + std::to_string(j + 1) + " -> x" + std::to_string(j + 1) + " - phi(x1, 0)"});
  }

  if (out.rank == 1) {
    for (int j = 1; j < n; ++j)
      if (!v[j].is_zero()) throw PrecisionExhausted("rank one but phi(x" + std::to_string(j + 1) + ") nonzero at cap");
    out.form = "iii";
    out.a.assign(n - 1, 0);
    out.phi = Morphism(v);
    return out;
  }
  for (int j = 1; j < n; ++j)
    if (v[j].is_zero()) throw NotSupported("phi not injective at cap");

  if (n == 2) {
    int guard = 0;
    for (;;) {
      auto m2 = is_monomial_unit(v[1]);
      if (m2) {
        mu = m2;
        break;
      }
      if (++guard > v[1].cap()) throw PrecisionExhausted("phi(x2) not monomial after quadratic transforms");
      int cap = common_cap();
      v = detail::compose_target(v, u1(cap), s_mul(u1(cap), u2(cap)));
      out.log.push_back({"quadratic", "u2 -> u1*u2"});
    }
    const int a = mu->alpha[0], b = mu->alpha[1];
    TruncatedSeries W = mu->unit;
    const GaussRational w0 = W.constant_term();
    if (!w0.is_one()) {
      W = W.scaled(w0.inv());
      v[1] = v[1].scaled(w0.inv());
      out.log.push_back({"scale", "x2 -> x2 / (" + detail::gauss_str(w0) + ")"});
    }
    if (W != TruncatedSeries::constant(2, W.cap(), GaussRational(1))) {
      TruncatedSeries R = s_root_unit(W, static_cast<unsigned>(b));
      int cap = std::min(common_cap(), R.cap() + 1);
      TruncatedSeries H = detail::invert_scaling(R.truncated(cap - 1), 1);
      v = detail::compose_target(v, u1(cap), H);
      out.log.push_back({"target_isomorphism", "u2 -> inverse of u2*W(u)^(1/" + std::to_string(b) + ")"});
    }
    common_cap();
    Exp ab{};
    ab[0] = static_cast<std::uint8_t>(a);
    ab[1] = static_cast<std::uint8_t>(b);
    if (v[1] != s_monomial(2, v[1].cap(), ab)) throw PrecisionExhausted("failed to normalize phi(x2) at cap");
    out.form = "iv";
    out.a = {a};
    out.b = b;
    out.phi = Morphism(v);
    return out;
  }
  out.form = "v";
  for (int j = 1; j < n; ++j) out.a.push_back(detail::u1_power(v[j]));
  out.phi = Morphism(v);
  return out;
}

}  // namespace pf
