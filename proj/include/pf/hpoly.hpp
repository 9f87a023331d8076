#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "gauss_rational.hpp"

namespace pf {

inline constexpr int kMaxVars = 12;

using Exp = std::array<std::uint8_t, kMaxVars>;

inline int exp_degree(const Exp& e, int n) {
  int d = 0;
  for (int i = 0; i < n; ++i) d += e[i];
  return d;
}

inline Exp exp_add(const Exp& a, const Exp& b) {
  Exp r{};
  for (int i = 0; i < kMaxVars; ++i) {
    int s = a[i] + b[i];
    if (s > 255) throw std::overflow_error("exponent overflow");
    r[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

inline bool exp_divides(const Exp& a, const Exp& b) {
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exp exp_sub(const Exp& b, const Exp& a) {
  Exp r{};
  for (int i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint8_t>(b[i] - a[i]);
  return r;
}

inline Exp exp_unit(int i) {
  Exp e{};
  e[i] = 1;
  return e;
}

using Term = std::pair<Exp, GaussRational>;

// Homogeneous polynomial; terms sorted by exponent, no zero coefficients.
class HPoly {
public:
  HPoly() = default;
  HPoly(int nvars, int degree) : nvars_(nvars), degree_(degree) { check_nvars(); }
  HPoly(int nvars, int degree, std::vector<Term> terms) : nvars_(nvars), degree_(degree), terms_(std::move(terms)) {
    check_nvars();
    normalize();
  }

  static HPoly constant(int nvars, const GaussRational& c) {
    HPoly p(nvars, 0);
    if (!c.is_zero()) p.terms_.emplace_back(Exp{}, c);
    return p;
  }
  static HPoly monomial(int nvars, const Exp& e, const GaussRational& c = GaussRational(1)) {
    HPoly p(nvars, exp_degree(e, nvars));
    if (!c.is_zero()) p.terms_.emplace_back(e, c);
    return p;
  }
  static HPoly var(int nvars, int i) { return monomial(nvars, exp_unit(i)); }

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  GaussRational coeff(const Exp& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exp& x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return GaussRational(0);
  }

  HPoly& operator+=(const HPoly& o) { return merge(o, false); }
  HPoly& operator-=(const HPoly& o) { return merge(o, true); }
  friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
  friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
  HPoly operator-() const {
    HPoly r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  HPoly scaled(const GaussRational& c) const {
    if (c.is_zero()) return HPoly(nvars_, degree_);
    HPoly r = *this;
    for (auto& t : r.terms_) t.second *= c;
    return r;
  }

  friend HPoly operator*(const HPoly& a, const HPoly& b) {
    if (a.nvars_ != b.nvars_) throw VariableMismatch("HPoly product");
    HPoly r(a.nvars_, a.degree_ + b.degree_);
    if (a.is_zero() || b.is_zero()) return r;
    r.terms_.reserve(a.size() * b.size());
    for (auto& ta : a.terms_)
      for (auto& tb : b.terms_) r.terms_.emplace_back(exp_add(ta.first, tb.first), ta.second * tb.second);
    r.normalize();
    return r;
  }
  HPoly& operator*=(const HPoly& o) { return *this = *this * o; }

  friend bool operator==(const HPoly& a, const HPoly& b) {
    if (a.is_zero() && b.is_zero()) return a.nvars_ == b.nvars_;
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }

  HPoly pow(unsigned e) const {
    HPoly r = constant(nvars_, GaussRational(1)), b = *this;
    while (e) {
      if (e & 1u) r *= b;
      e >>= 1u;
      if (e) b *= b;
    }
    return r;
  }

  // Leading term in lex order (largest exponent).
  const Term& leading() const { return terms_.back(); }

  // Exact quotient by a nonzero homogeneous divisor, if it exists.
  std::optional<HPoly> divide_exact(const HPoly& d) const {
    if (d.is_zero()) throw std::domain_error("HPoly division by zero");
    if (is_zero()) return HPoly(nvars_, std::max(0, degree_ - d.degree_));
    if (degree_ < d.degree_) return std::nullopt;
    HPoly rem = *this;
    std::vector<Term> q;
    const Term& ld = d.leading();
    GaussRational ldinv = ld.second.inv();
    while (!rem.is_zero()) {
      const Term& lr = rem.leading();
      if (!exp_divides(ld.first, lr.first)) return std::nullopt;
      Term t{exp_sub(lr.first, ld.first), lr.second * ldinv};
      q.push_back(t);
      rem -= monomial(nvars_, t.first, t.second) * d;
    }
    return HPoly(nvars_, degree_ - d.degree_, std::move(q));
  }

  // Substitute homogeneous linear or higher images; result is not graded-checked.
  GaussRational evaluate(const std::vector<GaussRational>& pt) const {
    GaussRational s(0);
    for (auto& t : terms_) {
      GaussRational m = t.second;
      for (int i = 0; i < nvars_; ++i)
        if (t.first[i]) m *= pf::pow(pt[i], t.first[i]);
      s += m;
    }
    return s;
  }

  HPoly derivative(int var) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (t.first[var] == 0) continue;
      Exp e = t.first;
      GaussRational c = t.second * GaussRational(static_cast<long>(e[var]));
      --e[var];
      out.emplace_back(e, c);
    }
    return HPoly(nvars_, std::max(0, degree_ - 1), std::move(out));
  }

  friend std::ostream& operator<<(std::ostream& os, const HPoly& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (auto& t : p.terms_) {
      if (!first) os << " + ";
      first = false;
      os << t.second;
      for (int i = 0; i < p.nvars_; ++i)
        if (t.first[i]) os << "*x" << (i + 1) << (t.first[i] > 1 ? "^" + std::to_string(t.first[i]) : "");
    }
    return os;
  }

private:
  void check_nvars() const {
    if (nvars_ < 0 || nvars_ > kMaxVars) throw VariableMismatch("nvars out of range");
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < terms_.size();) {
      Term acc = std::move(terms_[r]);
      std::size_t s = r + 1;
      while (s < terms_.size() && terms_[s].first == acc.first) acc.second += terms_[s++].second;
      r = s;
      if (!acc.second.is_zero()) {
        if (exp_degree(acc.first, nvars_) != degree_) throw std::invalid_argument("HPoly term degree mismatch");
        terms_[w++] = std::move(acc);
      }
    }
    terms_.resize(w);
  }

  HPoly& merge(const HPoly& o, bool negate) {
    if (o.is_zero()) return *this;
    if (nvars_ != o.nvars_) throw VariableMismatch("HPoly sum");
    if (is_zero()) degree_ = o.degree_;
    if (degree_ != o.degree_) throw std::invalid_argument("HPoly sum of different degrees");
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
        out.push_back(std::move(*i++));
      } else if (i == terms_.end() || j->first < i->first) {
        out.emplace_back(j->first, negate ? -j->second : j->second);
        ++j;
      } else {
        GaussRational c = negate ? i->second - j->second : i->second + j->second;
        if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  int nvars_ = 0;
  int degree_ = 0;
  std::vector<Term> terms_;
};

}  // namespace pf
