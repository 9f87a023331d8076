#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pf {

// Exact element of Q(i).
struct GaussRational {
  mpq_class re{0}, im{0};

  GaussRational() = default;
  GaussRational(long v) : re(v) {}  // NOLINT
  GaussRational(int v) : re(v) {}   // NOLINT
  GaussRational(const mpq_class& r) : re(r) { re.canonicalize(); }  // NOLINT
  GaussRational(const mpz_class& r) : re(r) {}  // NOLINT
  GaussRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static GaussRational I() { return {0, 1}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussRational conj() const { return {re, -im}; }
  mpq_class norm() const { return re * re + im * im; }
  GaussRational inv() const {
    mpq_class n = norm();
    if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
    return {re / n, -im / n};
  }

  GaussRational& operator+=(const GaussRational& o) { re += o.re; im += o.im; return *this; }
  GaussRational& operator-=(const GaussRational& o) { re -= o.re; im -= o.im; return *this; }
  GaussRational& operator*=(const GaussRational& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) { re *= o.re; return *this; }
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r); im = std::move(i);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    if (sgn(o.im) == 0) {
      if (sgn(o.re) == 0) throw std::domain_error("division by zero in Q(i)");
      re /= o.re; im /= o.re; return *this;
    }
    return *this *= o.inv();
  }

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  GaussRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  double abs() const { return std::sqrt(norm().get_d()); }

  friend std::ostream& operator<<(std::ostream& os, const GaussRational& g) {
    if (sgn(g.im) == 0) return os << g.re;
    if (sgn(g.re) == 0) return os << g.im << "i";
    return os << "(" << g.re << (sgn(g.im) > 0 ? "+" : "") << g.im << "i)";
  }
};

inline GaussRational pow(GaussRational b, unsigned e) {
  GaussRational r(1);
  while (e) {
    if (e & 1u) r *= b;
    e >>= 1u;
    if (e) b *= b;
  }
  return r;
}

inline mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0) throw FormatError("bad rational '" + s + "'");
  if (q.get_den() == 0) throw FormatError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string rational_string(const mpq_class& q) { return q.get_str(); }

namespace detail {

inline mpz_class lcm_den(const GaussRational& c) {
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), c.re.get_den_mpz_t(), c.im.get_den_mpz_t());
  return l;
}

// Round a Gaussian rational to the nearest Gaussian integer.
inline void round_gauss(const mpq_class& re, const mpq_class& im, mpz_class& a, mpz_class& b) {
  auto rnd = [](const mpq_class& q) {
    mpz_class num = 2 * q.get_num() + q.get_den();
    mpz_class den = 2 * q.get_den();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
  };
  a = rnd(re);
  b = rnd(im);
}

inline GaussRational from_double_scaled(std::complex<long double> z, long exp2) {
  auto conv = [exp2](long double v) {
    int e = 0;
    long double m = std::frexp(v, &e);
    long long mant = static_cast<long long>(std::ldexp(m, 62));
    mpq_class q(mpz_class(std::to_string(mant)));
    long total = static_cast<long>(e) - 62 + exp2;
    if (total >= 0) q *= mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(total));
    else q /= mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(-total));
    return q;
  };
  return {conv(z.real()), conv(z.imag())};
}

}  // namespace detail

// All k-th roots of c lying in Q(i).
inline std::vector<GaussRational> kth_roots(const GaussRational& c, unsigned k) {
  std::vector<GaussRational> out;
  if (k == 0) return out;
  if (c.is_zero()) { out.emplace_back(0); return out; }
  if (k == 1) { out.push_back(c); return out; }
  mpz_class D = detail::lcm_den(c);
  mpz_class Dk;
  mpz_pow_ui(Dk.get_mpz_t(), D.get_mpz_t(), k);
  GaussRational cp = c * GaussRational(mpq_class(Dk));
  long ea = 0, eb = 0;
  double ma = mpz_get_d_2exp(&ea, cp.re.get_num_mpz_t());
  double mb = mpz_get_d_2exp(&eb, cp.im.get_num_mpz_t());
  long e0 = std::max(ea, eb);
  long double ra = std::ldexp(static_cast<long double>(ma), static_cast<int>(ea - e0));
  long double rb = std::ldexp(static_cast<long double>(mb), static_cast<int>(eb - e0));
  std::complex<long double> base(ra, rb);
  // z = base * 2^e0; z^(1/k) = base^(1/k) * 2^(e0/k)
  long q = e0 / static_cast<long>(k), rem = e0 % static_cast<long>(k);
  if (rem < 0) { rem += k; --q; }
  long double mag = std::pow(std::abs(base), 1.0L / k) * std::pow(2.0L, static_cast<long double>(rem) / k);
  long double arg = std::arg(base);
  const long double pi = 3.14159265358979323846264338327950288L;
  for (unsigned j = 0; j < k; ++j) {
    std::complex<long double> z0 = std::polar(mag, (arg + 2 * pi * j) / k);
    GaussRational z = detail::from_double_scaled(z0, q);
    mpz_class a, b;
    detail::round_gauss(z.re, z.im, a, b);
    GaussRational zi{mpq_class(a), mpq_class(b)};
    for (int it = 0; it < 200; ++it) {
      if (pow(zi, k) == cp) break;
      if (zi.is_zero()) break;
      GaussRational pk1 = pow(zi, k - 1);
      GaussRational nz = (GaussRational(static_cast<long>(k - 1)) * zi * pk1 + cp) /
                         (GaussRational(static_cast<long>(k)) * pk1);
      detail::round_gauss(nz.re, nz.im, a, b);
      GaussRational nzi{mpq_class(a), mpq_class(b)};
      if (nzi == zi) break;
      zi = nzi;
    }
    if (pow(zi, k) == cp) {
      GaussRational r = zi / GaussRational(mpq_class(D));
      bool dup = false;
      for (auto& o : out) dup = dup || o == r;
      if (!dup) out.push_back(r);
    }
  }
  // close under multiplication by units that preserve the k-th power
  std::vector<GaussRational> units{GaussRational(1), GaussRational(-1), GaussRational::I(), -GaussRational::I()};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto& u : units) {
      if (!pow(u, k).is_one()) continue;
      GaussRational r = out[i] * u;
      bool dup = false;
      for (auto& o : out) dup = dup || o == r;
      if (!dup) out.push_back(r);
    }
  }
  return out;
}

inline bool is_kth_power(const GaussRational& c, unsigned k) { return !kth_roots(c, k).empty(); }

}  // namespace pf
