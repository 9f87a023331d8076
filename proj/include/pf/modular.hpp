#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "gauss_rational.hpp"

namespace pf::detail {

using u64 = std::uint64_t;

inline u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % p); }
inline u64 add_mod(u64 a, u64 b, u64 p) { u64 s = a + b; return s >= p ? s - p : s; }
inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 pow_mod(u64 b, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mul_mod(r, b, p);
    b = mul_mod(b, b, p);
    e >>= 1;
  }
  return r;
}

inline u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

// A prime p = 1 mod 4 together with s, s^2 = -1 mod p.
struct ModPrime {
  u64 p;
  u64 s;
};

// Deterministic list of 61-bit primes p = 1 mod 4.
inline const ModPrime& mod_prime(int idx) {
  static std::vector<ModPrime> primes;
  while (static_cast<int>(primes.size()) <= idx) {
    mpz_class c = primes.empty() ? mpz_class((mpz_class(1) << 61) - 1) : mpz_class(primes.back().p - 4);
    while (c % 4 != 1) c -= 1;
    while (mpz_probab_prime_p(c.get_mpz_t(), 40) == 0) c -= 4;
    const u64 p = c.get_ui();
    u64 s = 0;
    for (u64 g = 2;; ++g)
      if (pow_mod(g, (p - 1) / 2, p) == p - 1) {
        s = pow_mod(g, (p - 1) / 4, p);
        break;
      }
    primes.push_back({p, s});
  }
  return primes[idx];
}

inline std::optional<u64> reduce_mod(const mpq_class& q, u64 p) {
  mpz_class pp(static_cast<unsigned long>(p));
  mpz_class d = q.get_den() % pp;
  if (d == 0) return std::nullopt;
  mpz_class n = q.get_num() % pp;
  if (n < 0) n += pp;
  return mul_mod(n.get_ui(), inv_mod(d.get_ui(), p), p);
}

// Image of a + b i under i -> s (or -s when conj).
inline std::optional<u64> reduce_mod(const GaussRational& c, const ModPrime& m, bool conj) {
  auto a = reduce_mod(c.re, m.p);
  if (!a) return std::nullopt;
  if (c.im == 0) return a;
  auto b = reduce_mod(c.im, m.p);
  if (!b) return std::nullopt;
  u64 bs = mul_mod(*b, m.s, m.p);
  return conj ? sub_mod(*a, bs, m.p) : add_mod(*a, bs, m.p);
}

// n/d with |n|, d <= sqrt(M/2) and n = a d mod M.
inline std::optional<mpq_class> rational_reconstruct(const mpz_class& a, const mpz_class& M) {
  mpz_class bound;
  mpz_class half = M / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = M, r1 = a % M, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += M;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1; r1 = r2; t0 = t1; t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpq_class out(r1, t1);
  out.canonicalize();
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), M.get_mpz_t());
  if (g != 1) return std::nullopt;
  return out;
}

inline mpq_class reconstruct_or_zero(const mpz_class& a, const mpz_class& M, bool& ok) {
  if (a == 0) return 0;
  auto r = rational_reconstruct(a, M);
  if (!r) {
    ok = false;
    return 0;
  }
  return *r;
}

// Reduced row echelon form mod p; returns pivot columns.
inline std::vector<int> rref_mod(std::vector<std::vector<u64>>& M, int cols, u64 p) {
  std::vector<int> piv;
  const int rows = static_cast<int>(M.size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int q = r;
    while (q < rows && M[q][c] == 0) ++q;
    if (q == rows) continue;
    std::swap(M[q], M[r]);
    u64 iv = inv_mod(M[r][c], p);
    for (int j = c; j < cols; ++j) M[r][j] = mul_mod(M[r][j], iv, p);
    std::vector<int> nz;
    for (int j = c; j < cols; ++j)
      if (M[r][j]) nz.push_back(j);
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c] == 0) continue;
      u64 f = M[i][c];
      for (int j : nz) M[i][j] = sub_mod(M[i][j], mul_mod(f, M[r][j], p), p);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// Kernel of the reduced matrix, itself in reduced row echelon form.
inline std::vector<std::vector<u64>> kernel_rref_mod(const std::vector<std::vector<u64>>& R, const std::vector<int>& piv,
                                                     int cols, u64 p) {
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<u64>> K;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = R[i][f] ? p - R[i][f] : 0;
    K.push_back(std::move(v));
  }
  rref_mod(K, cols, p);
  return K;
}

}  // namespace pf::detail
