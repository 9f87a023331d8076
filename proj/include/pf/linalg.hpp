#pragma once

#include <optional>
#include <vector>

namespace pf {

template <class F>
using Matrix = std::vector<std::vector<F>>;

// In-place reduced row echelon form over a field; returns pivot columns.
template <class F>
std::vector<int> rref(Matrix<F>& M) {
  std::vector<int> piv;
  if (M.empty()) return piv;
  const int rows = static_cast<int>(M.size()), cols = static_cast<int>(M[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && M[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(M[p], M[r]);
    F inv = F(1) / M[r][c];
    for (int j = c; j < cols; ++j) M[r][j] = M[r][j] * inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || M[i][c].is_zero()) continue;
      F f = M[i][c];
      for (int j = c; j < cols; ++j)
        if (!M[r][j].is_zero()) M[i][j] = M[i][j] - f * M[r][j];
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

// Some solution of A x = b, or none.
template <class F>
std::optional<std::vector<F>> solve(const Matrix<F>& A, const std::vector<F>& b) {
  const int rows = static_cast<int>(A.size());
  const int cols = rows ? static_cast<int>(A[0].size()) : 0;
  Matrix<F> M = A;
  for (int i = 0; i < rows; ++i) M[i].push_back(b[i]);
  auto piv = rref(M);
  if (!piv.empty() && piv.back() == cols) return std::nullopt;
  std::vector<F> x(cols, F(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = M[i][cols];
  return x;
}

// Basis of {x : A x = 0}.
template <class F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& A, int cols) {
  Matrix<F> M = A;
  auto piv = rref(M);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<F>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<F> v(cols, F(0));
    v[f] = F(1);
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F(0) - M[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace pf
