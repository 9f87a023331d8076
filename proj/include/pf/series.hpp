#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <vector>

#include "hpoly.hpp"

namespace pf {

// Element of Q(i)[[x1..xn]] modulo (x)^(cap+1), stored by homogeneous component.
class TruncatedSeries {
public:
  TruncatedSeries() = default;
  TruncatedSeries(int nvars, int cap) : nvars_(nvars), cap_(cap) {
    if (cap < 0) throw std::invalid_argument("negative cap");
    comps_.reserve(cap + 1);
    for (int k = 0; k <= cap; ++k) comps_.emplace_back(nvars, k);
  }

  static TruncatedSeries constant(int nvars, int cap, const GaussRational& c) {
    TruncatedSeries s(nvars, cap);
    s.comps_[0] = HPoly::constant(nvars, c);
    return s;
  }
  static TruncatedSeries var(int nvars, int cap, int i) {
    TruncatedSeries s(nvars, cap);
    if (cap >= 1) s.comps_[1] = HPoly::var(nvars, i);
    return s;
  }
  static TruncatedSeries from_hpoly(const HPoly& p, int cap) {
    TruncatedSeries s(p.nvars(), cap);
    if (p.degree() <= cap) s.comps_[p.degree()] = p;
    return s;
  }
  static TruncatedSeries from_terms(int nvars, int cap, const std::vector<Term>& terms) {
    TruncatedSeries s(nvars, cap);
    for (auto& t : terms) {
      int d = exp_degree(t.first, nvars);
      if (d <= cap) s.comps_[d] += HPoly::monomial(nvars, t.first, t.second);
    }
    return s;
  }

  int nvars() const { return nvars_; }
  int cap() const { return cap_; }
  const HPoly& operator[](int k) const { return comps_.at(k); }
  HPoly& component(int k) { return comps_.at(k); }
  const std::vector<HPoly>& components() const { return comps_; }
  GaussRational constant_term() const { return comps_[0].coeff(Exp{}); }

  void set_component(const HPoly& p) {
    if (p.nvars() != nvars_) throw VariableMismatch("component");
    if (p.degree() <= cap_) comps_[p.degree()] = p;
  }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const HPoly& p) { return p.is_zero(); });
  }

  TruncatedSeries truncated(int cap) const {
    if (cap > cap_) throw std::invalid_argument("cannot raise cap");
    TruncatedSeries s = *this;
    s.comps_.resize(cap + 1);
    s.cap_ = cap;
    return s;
  }

  std::vector<Term> terms() const {
    std::vector<Term> out;
    for (auto& c : comps_)
      for (auto& t : c.terms()) out.push_back(t);
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    return out;
  }

  GaussRational coeff(const Exp& e) const {
    int d = exp_degree(e, nvars_);
    return d <= cap_ ? comps_[d].coeff(e) : GaussRational(0);
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) { return combine(o, false); }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return combine(o, true); }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& c : r.comps_) c = -c;
    return r;
  }
  TruncatedSeries scaled(const GaussRational& c) const {
    TruncatedSeries r = *this;
    for (auto& p : r.comps_) p = p.scaled(c);
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.nvars_ == b.nvars_ && a.cap_ == b.cap_ && a.comps_ == b.comps_;
  }
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const TruncatedSeries& s) {
    bool any = false;
    for (auto& c : s.comps_) {
      if (c.is_zero()) continue;
      if (any) os << " + ";
      os << c;
      any = true;
    }
    if (!any) os << "0";
    return os << " + O(" << s.cap_ + 1 << ")";
  }

private:
  TruncatedSeries& combine(const TruncatedSeries& o, bool neg) {
    if (nvars_ != o.nvars_) throw VariableMismatch("series sum");
    int c = std::min(cap_, o.cap_);
    comps_.resize(c + 1);
    cap_ = c;
    for (int k = 0; k <= c; ++k) {
      if (neg) comps_[k] -= o.comps_[k];
      else comps_[k] += o.comps_[k];
    }
    return *this;
  }

  int nvars_ = 0;
  int cap_ = 0;
  std::vector<HPoly> comps_;
};

inline TruncatedSeries s_mul(const TruncatedSeries& f, const TruncatedSeries& g) {
  if (f.nvars() != g.nvars()) throw VariableMismatch("s_mul");
  int cap = std::min(f.cap(), g.cap());
  TruncatedSeries r(f.nvars(), cap);
  int of = -1, og = -1;
  for (int k = 0; k <= cap && of < 0; ++k)
    if (!f[k].is_zero()) of = k;
  for (int k = 0; k <= cap && og < 0; ++k)
    if (!g[k].is_zero()) og = k;
  if (of < 0 || og < 0) return r;
  for (int i = of; i <= cap; ++i) {
    if (f[i].is_zero()) continue;
    for (int j = og; i + j <= cap; ++j) {
      if (g[j].is_zero()) continue;
      r.component(i + j) += f[i] * g[j];
    }
  }
  return r;
}

inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return s_mul(f, g); }

inline TruncatedSeries s_pow(const TruncatedSeries& f, unsigned e) {
  TruncatedSeries r = TruncatedSeries::constant(f.nvars(), f.cap(), GaussRational(1)), b = f;
  while (e) {
    if (e & 1u) r = s_mul(r, b);
    e >>= 1u;
    if (e) b = s_mul(b, b);
  }
  return r;
}

struct OrderInitial {
  std::optional<int> order;
  std::optional<HPoly> initial;
};

inline OrderInitial s_order_initial(const TruncatedSeries& f) {
  for (int k = 0; k <= f.cap(); ++k)
    if (!f[k].is_zero()) return {k, f[k]};
  return {};
}

inline std::optional<int> s_order(const TruncatedSeries& f) { return s_order_initial(f).order; }

inline TruncatedSeries s_inv_unit(const TruncatedSeries& f) {
  GaussRational c = f.constant_term();
  if (c.is_zero()) throw NotAUnit("constant term is zero");
  GaussRational ci = c.inv();
  TruncatedSeries g(f.nvars(), f.cap());
  g.component(0) = HPoly::constant(f.nvars(), ci);
  for (int k = 1; k <= f.cap(); ++k) {
    HPoly acc(f.nvars(), k);
    for (int i = 1; i <= k; ++i)
      if (!f[i].is_zero() && !g[k - i].is_zero()) acc += f[i] * g[k - i];
    g.component(k) = acc.scaled(-ci);
  }
  return g;
}

// u^r for a unit u with u(0) = 1 and rational r, via the graded Euler-operator recurrence.
inline TruncatedSeries s_pow_normalized(const TruncatedSeries& u, const mpq_class& r) {
  if (!u.constant_term().is_one()) throw NotAUnit("normalized power needs u(0)=1");
  TruncatedSeries g(u.nvars(), u.cap());
  g.component(0) = HPoly::constant(u.nvars(), GaussRational(1));
  mpq_class r1 = r + 1;
  for (int k = 1; k <= u.cap(); ++k) {
    HPoly acc(u.nvars(), k);
    for (int i = 1; i <= k; ++i) {
      if (u[i].is_zero() || g[k - i].is_zero()) continue;
      mpq_class w = r1 * i - k;
      if (sgn(w) == 0) continue;
      acc += (u[i] * g[k - i]).scaled(GaussRational(w));
    }
    g.component(k) = acc.scaled(GaussRational(mpq_class(1, k)));
  }
  return g;
}

inline TruncatedSeries s_root_unit(const TruncatedSeries& f, unsigned e) {
  if (e == 0) throw std::invalid_argument("root of order zero");
  GaussRational c = f.constant_term();
  if (c.is_zero()) throw NotAUnit("root of a non-unit");
  auto roots = kth_roots(c, e);
  if (roots.empty()) throw BaseFieldRootMissing("constant term has no root of order " + std::to_string(e));
  TruncatedSeries u = f.scaled(c.inv());
  return s_pow_normalized(u, mpq_class(1, e)).scaled(roots.front());
}

inline TruncatedSeries s_subst(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images) {
  if (static_cast<int>(images.size()) != f.nvars()) throw VariableMismatch("one image per variable required");
  if (images.empty()) return f;
  int m = images[0].nvars();
  int cap = f.cap();
  for (auto& g : images) {
    if (g.nvars() != m) throw VariableMismatch("image variable counts differ");
    if (!g.constant_term().is_zero()) throw ConstantTermNonzero("image with nonzero constant term");
    cap = std::min(cap, g.cap());
  }
  std::vector<std::vector<TruncatedSeries>> powers(f.nvars());
  auto power = [&](int i, int k) -> const TruncatedSeries& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(TruncatedSeries::constant(m, cap, GaussRational(1)));
    while (static_cast<int>(v.size()) <= k) v.push_back(s_mul(v.back(), images[i].truncated(cap)));
    return v[k];
  };
  TruncatedSeries r(m, cap);
  for (int d = 0; d <= cap; ++d) {
    for (auto& t : f[d].terms()) {
      TruncatedSeries term = TruncatedSeries::constant(m, cap, t.second);
      for (int i = 0; i < f.nvars(); ++i)
        if (t.first[i]) term = s_mul(term, power(i, t.first[i]));
      r += term;
    }
  }
  return r;
}

inline TruncatedSeries s_derivative(const TruncatedSeries& f, int var) {
  if (f.cap() == 0) return TruncatedSeries(f.nvars(), 0);
  TruncatedSeries r(f.nvars(), f.cap() - 1);
  for (int k = 1; k <= f.cap(); ++k) r.component(k - 1) = f[k].derivative(var);
  return r;
}

inline TruncatedSeries s_monomial(int nvars, int cap, const Exp& e, const GaussRational& c = GaussRational(1)) {
  return TruncatedSeries::from_terms(nvars, cap, {{e, c}});
}

// Element of Q(i)[[x^(1/ram)]] stored as a series in the substituted variables.
struct RamifiedSeries {
  TruncatedSeries base;
  int ram = 1;

  friend bool operator==(const RamifiedSeries& a, const RamifiedSeries& b) {
    return a.ram == b.ram && a.base == b.base;
  }
};

}  // namespace pf
