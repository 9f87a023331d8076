#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "linalg.hpp"
#include "upoly.hpp"

namespace pf {

// Element of Q(i)(w), numerator and monic denominator coprime.
class RatFunc {
public:
  RatFunc() : den_(UPoly::constant(GaussRational(1))) {}
  RatFunc(long v) : RatFunc(GaussRational(v)) {}  // NOLINT
  RatFunc(int v) : RatFunc(GaussRational(v)) {}   // NOLINT
  RatFunc(const GaussRational& c) : num_(UPoly::constant(c)), den_(UPoly::constant(GaussRational(1))) {}  // NOLINT
  RatFunc(UPoly p) : num_(std::move(p)), den_(UPoly::constant(GaussRational(1))) {}  // NOLINT
  RatFunc(UPoly p, UPoly q) : num_(std::move(p)), den_(std::move(q)) { normalize(); }

  static RatFunc w() { return RatFunc(UPoly::x()); }

  const UPoly& num() const { return num_; }
  const UPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.deg() <= 0 && den_.deg() == 0; }
  GaussRational constant_value() const { return num_.coeff(0); }

  RatFunc inv() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(i)(w)");
    return RatFunc(den_, num_);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.deg() == 0 && b.den_.deg() == 0) return RatFunc(a.num_ + b.num_);
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    if (a.den_.deg() == 0 || b.den_.deg() == 0)
      return make_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    UPoly g = detail::coprime_mod_p(a.den_, b.den_) ? UPoly::constant(GaussRational(1)) : gcd(a.den_, b.den_);
    if (g.deg() == 0) return make_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    UPoly ad = divmod(a.den_, g).first, bd = divmod(b.den_, g).first;
    UPoly n = a.num_ * bd + b.num_ * ad, d = ad * b.den_;
    if (n.is_zero()) return RatFunc();
    UPoly h = detail::coprime_mod_p(n, g) ? UPoly::constant(GaussRational(1)) : gcd(n, g);
    if (h.deg() > 0) {
      n = divmod(n, h).first;
      d = divmod(d, h).first;
    }
    return make_coprime(std::move(n), std::move(d));
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.den_.deg() == 0 && b.den_.deg() == 0) return RatFunc(a.num_ * b.num_);
    // cross-cancel: a.num/b.den and b.num/a.den
    UPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
    cancel(an, bd);
    cancel(bn, ad);
    return make_coprime(an * bn, ad * bd);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  GaussRational eval(const GaussRational& x) const {
    GaussRational d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("pole");
    return num_.eval(x) / d;
  }

  friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) {
    if (r.den_.deg() == 0) return os << "(" << r.num_ << ")";
    return os << "(" << r.num_ << ")/(" << r.den_ << ")";
  }

private:
  struct Coprime {};
  RatFunc(UPoly p, UPoly q, Coprime) : num_(std::move(p)), den_(std::move(q)) { scale_monic(); }
  static RatFunc make_coprime(UPoly p, UPoly q) {
    if (p.is_zero()) return RatFunc();
    return RatFunc(std::move(p), std::move(q), Coprime{});
  }
  static void cancel(UPoly& n, UPoly& d) {
    if (d.deg() == 0 || n.deg() == 0 || detail::coprime_mod_p(n, d)) return;
    UPoly g = gcd(n, d);
    if (g.deg() == 0) return;
    n = divmod(n, g).first;
    d = divmod(d, g).first;
  }
  void scale_monic() {
    GaussRational l = den_.lc();
    if (!l.is_one()) {
      GaussRational li = l.inv();
      num_ = num_.scaled(li);
      den_ = den_.scaled(li);
    }
  }
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    if (num_.is_zero()) {
      den_ = UPoly::constant(GaussRational(1));
      return;
    }
    if (den_.deg() > 0 && !detail::coprime_mod_p(num_, den_)) {
      UPoly g = gcd(num_, den_);
      if (g.deg() > 0) {
        num_ = divmod(num_, g).first;
        den_ = divmod(den_, g).first;
      }
    }
    GaussRational l = den_.lc();
    if (!l.is_one()) {
      GaussRational li = l.inv();
      num_ = num_.scaled(li);
      den_ = den_.scaled(li);
    }
  }
  UPoly num_, den_;
};

using KPoly = Poly<RatFunc>;

// Substitute w -> w + a in a polynomial over Q(i).
inline UPoly upoly_shift(const UPoly& p, const GaussRational& a) { return p.shifted(a); }

// Coefficients of a rational function's expansion at w0 (as a series in w - w0), n+1 terms.
inline std::vector<GaussRational> expand_at(const RatFunc& r, const GaussRational& w0, int n) {
  UPoly p = r.num().shifted(w0), q = r.den().shifted(w0);
  if (q.coeff(0).is_zero()) throw std::domain_error("pole at expansion point");
  std::vector<GaussRational> out(n + 1);
  GaussRational q0inv = q.coeff(0).inv();
  for (int k = 0; k <= n; ++k) {
    GaussRational s = p.coeff(k);
    for (int j = 1; j <= std::min(k, q.deg()); ++j) s -= q.coeff(j) * out[k - j];
    out[k] = s * q0inv;
  }
  return out;
}

// Pade approximant p/q with deg p <= m, deg q <= n matching the series through order m+n.
inline std::optional<RatFunc> pade(const std::vector<GaussRational>& s, int m, int n) {
  // unknowns q1..qn; equations: sum_{j=0..n} q_j s_{k-j} = 0 for k = m+1..m+n, q0 = 1
  auto sk = [&](int k) { return k >= 0 && k < static_cast<int>(s.size()) ? s[k] : GaussRational(0); };
  std::vector<GaussRational> q(n + 1, GaussRational(0));
  q[0] = GaussRational(1);
  if (n > 0) {
    Matrix<GaussRational> A(n, std::vector<GaussRational>(n));
    std::vector<GaussRational> b(n);
    for (int i = 0; i < n; ++i) {
      int k = m + 1 + i;
      for (int j = 1; j <= n; ++j) A[i][j - 1] = sk(k - j);
      b[i] = -sk(k);
    }
    auto x = solve(A, b);
    if (!x) return std::nullopt;
    for (int j = 1; j <= n; ++j) q[j] = (*x)[j - 1];
  }
  std::vector<GaussRational> p(m + 1, GaussRational(0));
  for (int k = 0; k <= m; ++k)
    for (int j = 0; j <= std::min(k, n); ++j) p[k] += q[j] * sk(k - j);
  return RatFunc(UPoly(p), UPoly(q));
}

inline RatFunc ratfunc_shift(const RatFunc& r, const GaussRational& a) {
  return RatFunc(r.num().shifted(a), r.den().shifted(a));
}

// k-th root in Q(i)(w), if one exists.
inline std::optional<RatFunc> kth_root(const RatFunc& r, unsigned k) {
  if (r.is_zero()) return RatFunc();
  auto p = poly_kth_root(r.num(), k);
  if (!p) return std::nullopt;
  auto q = poly_kth_root(r.den(), k);
  if (!q) return std::nullopt;
  return RatFunc(*p, *q);
}

namespace detail {

inline KPoly clear_to_upolys(const KPoly& R, std::vector<UPoly>& out) {
  UPoly L = UPoly::constant(GaussRational(1));
  for (auto& c : R.coeffs())
    if (!c.is_zero()) L = divmod(L * c.den(), gcd(L, c.den())).first;
  out.clear();
  for (auto& c : R.coeffs()) out.push_back(divmod(c.num() * L, c.den()).first);
  return R;
}

inline std::vector<GaussRational> sample_points() {
  std::vector<GaussRational> pts;
  for (int r = 0; r <= 6; ++r)
    for (int a = -r; a <= r; ++a)
      for (int b = -r; b <= r; ++b)
        if (std::max(std::abs(a), std::abs(b)) == r) pts.emplace_back(mpq_class(a), mpq_class(b));
  return pts;
}

}  // namespace detail

// Distinct roots in Q(i)(w) of a nonzero polynomial over Q(i)(w).
inline std::vector<RatFunc> roots_in_K(const KPoly& Rin) {
  std::vector<RatFunc> out;
  if (Rin.deg() < 1) return out;
  KPoly R = squarefree_part(Rin);
  if (R.coeff(0).is_zero()) {
    out.emplace_back();
    R = divmod(R, KPoly::x()).first;
  }
  if (R.deg() < 1) return out;
  if (R.deg() == 1) {
    out.push_back(-R.coeff(0) / R.lc());
    return out;
  }
  std::vector<UPoly> B;
  detail::clear_to_upolys(R, B);
  bool constant = true;
  for (auto& b : B) constant = constant && b.deg() <= 0;
  if (constant) {
    std::vector<GaussRational> c;
    for (auto& b : B) c.push_back(b.coeff(0));
    for (auto& r : roots_qi(UPoly(c))) out.emplace_back(r);
    return out;
  }
  const int d = R.deg();
  const int dp = B[0].deg(), dq = B[d].deg();
  for (auto& w0 : detail::sample_points()) {
    if (B[d].eval(w0).is_zero()) continue;
    std::vector<GaussRational> sc;
    for (auto& b : B) sc.push_back(b.eval(w0));
    UPoly S(sc);
    if (gcd(S, S.derivative()).deg() > 0) continue;
    // Lift each simple root of the specialization to a series in e = w - w0.
    std::vector<UPoly> Bs;
    for (auto& b : B) Bs.push_back(b.shifted(w0));
    const int N = dp + dq + 1;
    for (auto& z0 : roots_qi(S)) {
      GaussRational dS = S.derivative().eval(z0);
      std::vector<GaussRational> z(N + 1, GaussRational(0));
      z[0] = z0;
      for (int k = 1; k <= N; ++k) {
        // coefficient of e^k in sum_j Bs[j](e) * Z(e)^j with Z truncated below k
        std::vector<GaussRational> zp{GaussRational(1)};
        GaussRational acc(0);
        for (int j = 0; j <= d; ++j) {
          for (int a = 0; a <= k && a <= Bs[j].deg(); ++a)
            if (k - a < static_cast<int>(zp.size())) acc += Bs[j].coeff(a) * zp[k - a];
          std::vector<GaussRational> nz(k + 1, GaussRational(0));
          for (int a = 0; a < static_cast<int>(zp.size()); ++a)
            for (int b = 0; b + a <= k && b < k; ++b) nz[a + b] += zp[a] * z[b];
          zp = std::move(nz);
        }
        z[k] = -acc / dS;
      }
      auto pa = pade(z, dp, dq);
      if (!pa) continue;
      RatFunc cand = ratfunc_shift(*pa, -w0);
      if (R.eval(cand).is_zero() && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
    }
    return out;
  }
  throw std::runtime_error("no good specialization point");
}

// z^m - c irreducible over Q(i)(w) (Capelli's criterion).
inline bool binomial_irreducible(const RatFunc& c, unsigned m) {
  if (c.is_zero()) return m == 1;
  for (unsigned p = 2; p <= m; ++p) {
    bool prime = true;
    for (unsigned q = 2; q * q <= p; ++q) prime = prime && p % q;
    if (!prime || m % p) continue;
    if (kth_root(c, p)) return false;
  }
  if (m % 4 == 0 && kth_root(-c / RatFunc(4), 4)) return false;
  return true;
}

}  // namespace pf
