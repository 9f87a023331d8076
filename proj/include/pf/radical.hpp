#pragma once

#include <memory>
#include <ostream>
#include <vector>

#include "chart.hpp"

namespace pf::detail {

// Field K(theta) with theta^e = c, c in K = Q(i)(w).
struct RadCtx {
  int e;
  RatFunc c;
};
using CtxPtr = std::shared_ptr<const RadCtx>;

// Element of K or K(theta); a null context means the element lies in K.
class RadElem {
public:
  RadElem() : v_{RatFunc()} {}
  RadElem(long x) : v_{RatFunc(x)} {}                // NOLINT
  RadElem(int x) : v_{RatFunc(x)} {}                 // NOLINT
  RadElem(const GaussRational& x) : v_{RatFunc(x)} {}  // NOLINT
  RadElem(const RatFunc& x) : v_{x} {}               // NOLINT
  RadElem(CtxPtr ctx, std::vector<RatFunc> v) : ctx_(std::move(ctx)), v_(std::move(v)) {
    v_.resize(ctx_ ? ctx_->e : 1);
  }

  static RadElem theta(const CtxPtr& ctx) {
    std::vector<RatFunc> v(ctx->e);
    v[1] = RatFunc(1);
    return RadElem(ctx, std::move(v));
  }

  const CtxPtr& ctx() const { return ctx_; }
  int dim() const { return ctx_ ? ctx_->e : 1; }
  RatFunc coord(int j) const { return j < static_cast<int>(v_.size()) ? v_[j] : RatFunc(); }
  bool is_zero() const {
    for (auto& x : v_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool in_base() const {
    for (std::size_t j = 1; j < v_.size(); ++j)
      if (!v_[j].is_zero()) return false;
    return true;
  }

  friend RadElem operator+(const RadElem& a, const RadElem& b) {
    CtxPtr c = merge(a, b);
    int e = c ? c->e : 1;
    std::vector<RatFunc> v(e);
    for (int j = 0; j < e; ++j) v[j] = a.coord(j) + b.coord(j);
    return RadElem(c, std::move(v));
  }
  RadElem operator-() const {
    RadElem r = *this;
    for (auto& x : r.v_) x = -x;
    return r;
  }
  friend RadElem operator-(const RadElem& a, const RadElem& b) { return a + (-b); }
  friend RadElem operator*(const RadElem& a, const RadElem& b) {
    CtxPtr c = merge(a, b);
    if (!c) return RadElem(a.v_[0] * b.v_[0]);
    const int e = c->e;
    std::vector<RatFunc> v(e);
    for (int i = 0; i < a.dim(); ++i) {
      if (a.v_[i].is_zero()) continue;
      for (int j = 0; j < b.dim(); ++j) {
        if (b.v_[j].is_zero()) continue;
        RatFunc p = a.v_[i] * b.v_[j];
        if (i + j >= e) p = p * c->c;
        v[(i + j) % e] = v[(i + j) % e] + p;
      }
    }
    return RadElem(c, std::move(v));
  }
  friend RadElem operator/(const RadElem& a, const RadElem& b) { return a * b.inv(); }
  friend bool operator==(const RadElem& a, const RadElem& b) {
    int e = std::max(a.dim(), b.dim());
    if (a.ctx_ && b.ctx_) merge(a, b);
    for (int j = 0; j < e; ++j)
      if (a.coord(j) != b.coord(j)) return false;
    return true;
  }
  friend bool operator!=(const RadElem& a, const RadElem& b) { return !(a == b); }

  RadElem inv() const {
    if (is_zero()) throw std::domain_error("division by zero in K(theta)");
    if (in_base()) return RadElem(ctx_, {v_[0].inv()});
    KPoly a(v_);
    std::vector<RatFunc> m(ctx_->e + 1);
    m[0] = -ctx_->c;
    m[ctx_->e] = RatFunc(1);
    auto [g, u, unused] = ext_gcd(a, KPoly(m));
    (void)unused;
    if (g.deg() != 0) throw std::domain_error("K(theta) is not a field");
    return RadElem(ctx_, u.coeffs());
  }

  RadElem pow(long k) const {
    if (k < 0) return inv().pow(-k);
    RadElem r(ctx_, {RatFunc(1)}), b = *this;
    while (k) {
      if (k & 1) r = r * b;
      k >>= 1;
      if (k) b = b * b;
    }
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const RadElem& r) {
    os << r.v_[0];
    for (std::size_t j = 1; j < r.v_.size(); ++j)
      if (!r.v_[j].is_zero()) os << " + " << r.v_[j] << "*th^" << j;
    return os;
  }

private:
  static CtxPtr merge(const RadElem& a, const RadElem& b) {
    if (!a.ctx_) return b.ctx_;
    if (!b.ctx_ || a.ctx_ == b.ctx_) return a.ctx_;
    if (a.ctx_->e != b.ctx_->e || a.ctx_->c != b.ctx_->c) throw std::logic_error("mixed radical contexts");
    return a.ctx_;
  }
  CtxPtr ctx_;
  std::vector<RatFunc> v_;
};

using RPoly = Poly<RadElem>;

// Power series in s over K(theta), known through s^prec.
struct FSer {
  int prec = -1;
  std::vector<RadElem> c;

  FSer() = default;
  explicit FSer(int p) : prec(p), c(std::max(0, p + 1)) {}
  static FSer constant(const RadElem& a, int p) {
    FSer s(p);
    if (p >= 0) s.c[0] = a;
    return s;
  }

  RadElem at(int k) const { return k >= 0 && k <= prec ? c[k] : RadElem(); }
  int val() const {
    for (int k = 0; k <= prec; ++k)
      if (!c[k].is_zero()) return k;
    return prec + 1;
  }
  bool is_zero() const { return val() > prec; }

  friend FSer operator+(const FSer& a, const FSer& b) {
    FSer r(std::min(a.prec, b.prec));
    for (int k = 0; k <= r.prec; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  FSer operator-() const {
    FSer r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend FSer operator-(const FSer& a, const FSer& b) { return a + (-b); }
  friend FSer operator*(const FSer& a, const FSer& b) {
    int va = a.val(), vb = b.val();
    FSer r(std::min(a.prec + std::min(vb, b.prec + 1), b.prec + std::min(va, a.prec + 1)));
    for (int i = va; i <= a.prec; ++i) {
      if (a.c[i].is_zero()) continue;
      for (int j = vb; j <= b.prec && i + j <= r.prec; ++j)
        if (!b.c[j].is_zero()) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
  }
  FSer scaled(const RadElem& a) const {
    FSer r = *this;
    for (auto& x : r.c) x = x * a;
    return r;
  }
  // multiply by s^m (m >= 0) or divide by s^(-m); division needs the low terms to vanish
  FSer shifted(int m) const {
    FSer r(prec + m);
    for (int k = std::max(0, -m); k <= prec; ++k) {
      if (k + m < 0) continue;
      r.c[k + m] = c[k];
    }
    for (int k = 0; k < -m && k <= prec; ++k)
      if (!c[k].is_zero()) throw std::logic_error("FSer: division by s^m with low terms");
    return r;
  }
  // s -> s^q
  FSer ramified(int q) const {
    FSer r(q * prec + q - 1);
    for (int k = 0; k <= prec; ++k) r.c[q * k] = c[k];
    return r;
  }
};

}  // namespace pf::detail
