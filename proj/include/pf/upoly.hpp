#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "gauss_rational.hpp"

namespace pf {

// Dense univariate polynomial over a field F, coefficients in ascending degree.
template <class F>
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }

  static Poly constant(const F& a) { return Poly(std::vector<F>{a}); }
  static Poly monomial(int k, const F& a) {
    std::vector<F> v(k + 1, F(0));
    v[k] = a;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(1, F(1)); }

  int deg() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int k) const { return k >= 0 && k <= deg() ? c_[k] : F(0); }
  const F& lc() const { return c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == F(1); }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = F(0) - x;
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const F& a) const {
    std::vector<F> r = c_;
    for (auto& x : r) x = x * a;
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const {
    Poly r = constant(F(1)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      e >>= 1u;
      if (e) b *= b;
    }
    return r;
  }

  F eval(const F& x) const {
    F s(0);
    for (std::size_t i = c_.size(); i-- > 0;) s = s * x + c_[i];
    return s;
  }

  Poly derivative() const {
    std::vector<F> r;
    for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * F(static_cast<long>(i)));
    return Poly(std::move(r));
  }

  Poly monic() const { return is_zero() ? *this : scaled(F(1) / lc()); }

  // p(z + a)
  Poly shifted(const F& a) const {
    Poly r, lin(std::vector<F>{a, F(1)});
    for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + constant(c_[i]);
    return r;
  }

  // p(a z)
  Poly dilated(const F& a) const {
    std::vector<F> r = c_;
    F p(1);
    for (auto& x : r) {
      x = x * p;
      p = p * a;
    }
    return Poly(std::move(r));
  }

  friend std::ostream& operator<<(std::ostream& os, const Poly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int i = p.deg(); i >= 0; --i) {
      if (p.c_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << p.c_[i];
      if (i) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
    }
    return os;
  }

private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.deg() < b.deg()) return {Poly<F>(), a};
  std::vector<F> q(a.deg() - b.deg() + 1, F(0));
  std::vector<F> r = a.coeffs();
  F binv = F(1) / b.lc();
  for (int k = a.deg() - b.deg(); k >= 0; --k) {
    F t = r[k + b.deg()] * binv;
    q[k] = t;
    if (t.is_zero()) continue;
    for (int j = 0; j <= b.deg(); ++j) r[k + j] = r[k + j] - t * b.coeffs()[j];
  }
  r.resize(b.deg());
  return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) { return divmod(a, b).second; }

template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  if (a.deg() == 0 || b.deg() == 0) return Poly<F>::constant(F(1));
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly<F> r = a % b;
    a = std::move(b);
    b = r.is_zero() ? r : r.monic();
  }
  return a;
}

// Returns (g, u, v) with u a + v b = g monic.
template <class F>
std::tuple<Poly<F>, Poly<F>, Poly<F>> ext_gcd(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r0 = a, r1 = b, s0 = Poly<F>::constant(F(1)), s1, t0, t1 = Poly<F>::constant(F(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly<F> s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  F inv = F(1) / r0.lc();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

// Yun's algorithm: p = lc * prod_i out[i]^(i+1), factors squarefree and pairwise coprime.
template <class F>
std::vector<Poly<F>> squarefree_decomposition(const Poly<F>& p) {
  std::vector<Poly<F>> out;
  if (p.deg() < 1) return out;
  Poly<F> a = p.monic();
  Poly<F> b = a.derivative();
  Poly<F> c = gcd(a, b);
  Poly<F> w = divmod(a, c).first;
  Poly<F> y = divmod(b, c).first;
  Poly<F> z = y - w.derivative();
  while (w.deg() > 0) {
    Poly<F> g = gcd(w, z);
    out.push_back(g);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().deg() == 0) out.pop_back();
  return out;
}

template <class F>
Poly<F> squarefree_part(const Poly<F>& p) {
  if (p.deg() < 1) return p.monic();
  return divmod(p.monic(), gcd(p, p.derivative())).first;
}

// Power series u^r to n+1 terms for u(0)=1 and rational r.
template <class F>
std::vector<F> series_pow_normalized(const std::vector<F>& u, const mpq_class& r, int n) {
  std::vector<F> g(n + 1, F(0));
  g[0] = F(1);
  auto ui = [&](int i) { return i < static_cast<int>(u.size()) ? u[i] : F(0); };
  for (int k = 1; k <= n; ++k) {
    F s(0);
    for (int i = 1; i <= k; ++i) {
      F a = ui(i);
      if (a.is_zero()) continue;
      mpq_class f = mpq_class(i) * (r + 1) - k;
      if (sgn(f) == 0) continue;
      s = s + F(GaussRational(f)) * a * g[k - i];
    }
    g[k] = s / F(static_cast<long>(k));
  }
  return g;
}

using UPoly = Poly<GaussRational>;

namespace detail {

// Coprimality certificate modulo a prime p = 1 mod 4 (i maps to a square root of -1).
// true proves gcd(a, b) = 1 over Q(i); false means undecided.
inline bool coprime_mod_p(const UPoly& a, const UPoly& b) {
  using u64 = std::uint64_t;
  constexpr u64 p = 1000000009ULL;
  auto mulm = [](u64 x, u64 y) { return static_cast<u64>((static_cast<unsigned __int128>(x) * y) % p); };
  auto powm = [&](u64 b0, u64 e) {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mulm(r, b0);
      b0 = mulm(b0, b0);
      e >>= 1;
    }
    return r;
  };
  static const u64 sqrtm1 = [&] {
    for (u64 g = 2;; ++g) {
      u64 r = powm(g, (p - 1) / 4);
      if (mulm(r, r) == p - 1) return r;
    }
  }();
  auto red_q = [&](const mpq_class& q, bool& ok) -> u64 {
    u64 d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
    if (d == 0) {
      ok = false;
      return 0;
    }
    u64 n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
    return mulm(n, powm(d, p - 2));
  };
  auto red = [&](const UPoly& f, std::vector<u64>& out) {
    bool ok = true;
    out.clear();
    for (auto& c : f.coeffs()) out.push_back((red_q(c.re, ok) + mulm(red_q(c.im, ok), sqrtm1)) % p);
    return ok && !out.empty() && out.back() != 0;
  };
  std::vector<u64> x, y;
  if (!red(a, x) || !red(b, y)) return false;
  auto trim = [](std::vector<u64>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  };
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return true;
    u64 inv = powm(y.back(), p - 2);
    while (x.size() >= y.size()) {
      u64 f = mulm(x.back(), inv);
      std::size_t sh = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j) x[sh + j] = (x[sh + j] + p - mulm(f, y[j])) % p;
      trim(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return x.size() == 1;
}

// Aberth iteration for all complex roots of a polynomial with complex coefficients.
inline std::vector<std::complex<long double>> numeric_roots(const std::vector<std::complex<long double>>& c) {
  using C = std::complex<long double>;
  int n = static_cast<int>(c.size()) - 1;
  std::vector<C> z(n);
  if (n <= 0) return z;
  long double R = 0;
  for (int i = 0; i < n; ++i) R = std::max(R, std::pow(std::abs(c[i] / c[n]), 1.0L / (n - i)));
  R = 2 * R + 1e-3L;
  for (int i = 0; i < n; ++i) z[i] = std::polar(R * 0.7L, 2.0L * 3.14159265358979323846L * i / n + 0.4L);
  for (int it = 0; it < 2000; ++it) {
    long double moved = 0;
    for (int i = 0; i < n; ++i) {
      C p = c[n], dp = 0;
      for (int k = n - 1; k >= 0; --k) {
        dp = dp * z[i] + p;
        p = p * z[i] + c[k];
      }
      if (std::abs(p) == 0) continue;
      C ratio = p / dp;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      C w = ratio / (1.0L - ratio * s);
      z[i] -= w;
      moved = std::max(moved, std::abs(w) / (1 + std::abs(z[i])));
    }
    if (moved < 1e-17L) break;
  }
  return z;
}

}  // namespace detail

// Distinct roots in Q(i) of a nonzero polynomial over Q(i).
inline std::vector<GaussRational> roots_qi(const UPoly& p) {
  std::vector<GaussRational> out;
  if (p.deg() < 1) return out;
  UPoly s = squarefree_part(p);
  if (s.coeff(0).is_zero()) {
    out.emplace_back(0);
    s = divmod(s, UPoly::x()).first;
  }
  if (s.deg() == 1) {
    out.push_back(-s.coeff(0) / s.lc());
    return out;
  }
  if (s.deg() == 2) {
    GaussRational a = s.coeff(2), b = s.coeff(1), c = s.coeff(0);
    GaussRational disc = b * b - GaussRational(4) * a * c;
    auto sq = kth_roots(disc, 2);
    if (!sq.empty()) {
      out.push_back((-b + sq[0]) / (GaussRational(2) * a));
      out.push_back((-b - sq[0]) / (GaussRational(2) * a));
    }
    return out;
  }
  if (s.deg() < 1) return out;
  // Clear denominators: integer Gaussian coefficients, then lc*root is a Gaussian integer.
  mpz_class D = 1;
  for (auto& c : s.coeffs()) D = lcm(D, detail::lcm_den(c));
  UPoly t = s.scaled(GaussRational(mpq_class(D)));
  GaussRational lc = t.lc();
  std::vector<std::complex<long double>> cc;
  for (auto& c : t.coeffs())
    cc.emplace_back(static_cast<long double>(c.re.get_d()), static_cast<long double>(c.im.get_d()));
  for (auto& z : detail::numeric_roots(cc)) {
    std::complex<long double> lz = std::complex<long double>(lc.re.get_d(), lc.im.get_d()) * z;
    mpz_class a, b;
    detail::round_gauss(mpq_class(static_cast<double>(lz.real())), mpq_class(static_cast<double>(lz.imag())), a, b);
    GaussRational cand = GaussRational(mpq_class(a), mpq_class(b)) / lc;
    if (t.eval(cand).is_zero() && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
  }
  return out;
}

// q with q^k = p exactly, if one exists over Q(i).
template <class F, class RootFn>
std::optional<Poly<F>> poly_kth_root_generic(const Poly<F>& p, unsigned k, RootFn lc_root) {
  if (k == 1) return p;
  if (p.is_zero()) return p;
  if (p.deg() % static_cast<int>(k)) return std::nullopt;
  int lo = 0;
  while (p.coeff(lo).is_zero()) ++lo;
  if (lo % static_cast<int>(k)) return std::nullopt;
  int n = p.deg() / static_cast<int>(k) - lo / static_cast<int>(k);
  auto r0 = lc_root(p.coeff(lo), k);
  if (!r0) return std::nullopt;
  std::vector<F> u(p.deg() - lo + 1, F(0));
  F inv = F(1) / p.coeff(lo);
  for (int i = lo; i <= p.deg(); ++i) u[i - lo] = p.coeff(i) * inv;
  auto g = series_pow_normalized(u, mpq_class(1, k), n);
  std::vector<F> q(lo / k, F(0));
  for (auto& x : g) q.push_back(x * *r0);
  Poly<F> cand(std::move(q));
  if (cand.pow(k) == p) return cand;
  return std::nullopt;
}

inline std::optional<UPoly> poly_kth_root(const UPoly& p, unsigned k) {
  return poly_kth_root_generic(p, k, [](const GaussRational& c, unsigned e) -> std::optional<GaussRational> {
    auto r = kth_roots(c, e);
    if (r.empty()) return std::nullopt;
    return r[0];
  });
}

}  // namespace pf
