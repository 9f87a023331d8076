#pragma once

#include <vector>

namespace pf {

// Division-free characteristic polynomial: coefficients p[0..n] of det(tI - A) = sum p[k] t^(n-k).
template <class R>
std::vector<R> berkowitz_charpoly(const std::vector<std::vector<R>>& A, const R& zero, const R& one) {
  const std::size_t n = A.size();
  std::vector<R> C{one};
  if (n == 0) return C;
  C.push_back(zero - A[0][0]);
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<R> T{one, zero - A[r][r]};
    std::vector<R> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = A[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      R dot = zero;
      for (std::size_t j = 0; j < r; ++j) dot = dot + A[r][j] * v[j];
      T.push_back(zero - dot);
      if (k + 1 < r) {
        std::vector<R> nv(r, zero);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) nv[i] = nv[i] + A[i][j] * v[j];
        v = std::move(nv);
      }
    }
    std::vector<R> nc(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < C.size(); ++j) nc[i] = nc[i] + T[i - j] * C[j];
    C = std::move(nc);
  }
  return C;
}

template <class R>
R berkowitz_det(const std::vector<std::vector<R>>& A, const R& zero, const R& one) {
  auto c = berkowitz_charpoly(A, zero, one);
  return A.size() % 2 ? zero - c.back() : c.back();
}

}  // namespace pf
