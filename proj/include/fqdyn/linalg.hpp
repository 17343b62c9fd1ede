#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fqdyn/errors.hpp"
#include "fqdyn/ring.hpp"

namespace fqdyn {

template <class R>
using Matrix = std::vector<std::vector<R>>;

template <class R>
struct Echelon {
  Matrix<R> m;                     // fraction-free row echelon form
  std::vector<std::size_t> pivots;  // pivot column of each of the first `rank` rows
  std::size_t rank = 0;
  int sign = 1;                     // parity of the row swaps
};

/// Fraction-free (Bareiss) elimination.  Pivots are searched only in the
/// first `pivot_cols` columns; columns without a pivot are skipped, so the
/// result is an echelon form of any shape.  Every division is exact.
template <class R>
Echelon<R> bareiss(Matrix<R> m, std::size_t pivot_cols) {
  using T = ring_traits<R>;
  Echelon<R> out;
  const std::size_t rows = m.size();
  if (rows == 0) return out;
  const std::size_t cols = m[0].size();
  if (pivot_cols > cols) pivot_cols = cols;
  std::optional<R> prev;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(m[piv], m[r]);
      out.sign = -out.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        R v = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        m[i][j] = prev ? T::exact_div(v, *prev) : std::move(v);
      }
      m[i][c] = T::zero_like(m[r][c]);
    }
    prev = m[r][c];
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.m = std::move(m);
  return out;
}

template <class R>
R determinant(const Matrix<R>& a) {
  using T = ring_traits<R>;
  const std::size_t n = a.size();
  if (n == 0) throw DomainError("determinant of an empty matrix");
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("determinant of a non-square matrix");
  auto e = bareiss(a, n);
  if (e.rank < n) return T::zero_like(a[0][0]);
  R d = e.m[n - 1][n - 1];
  return e.sign < 0 ? -d : d;
}

}  // namespace fqdyn
