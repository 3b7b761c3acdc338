#pragma once

// Small dense exact linear algebra. Dimensions here never exceed ~10.

#include <optional>
#include <vector>

#include "parallelo/errors.hpp"
#include "parallelo/vector.hpp"

namespace parallelo {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix gram_matrix(const std::vector<RationalVector>& vs) {
  RationalMatrix g(vs.size(), std::vector<Rational>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) g[i][j] = dot(vs[i], vs[j]);
  return g;
}

/// Gauss-Jordan inverse; nullopt when singular.
inline std::optional<RationalMatrix> inverse(RationalMatrix a) {
  const std::size_t n = a.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational p = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

/// Matrix M with M*y = coefficients of the orthogonal projection of y onto
/// span(basis), expressed in `basis`. Rows are indexed by basis vectors.
inline RationalMatrix coefficient_map(const std::vector<RationalVector>& basis) {
  auto ginv = inverse(gram_matrix(basis));
  if (!ginv) throw DegenerateCell("basis vectors are linearly dependent");
  const std::size_t k = basis.size();
  const std::size_t d = basis.empty() ? 0 : basis[0].dim();
  RationalMatrix m(k, std::vector<Rational>(d, Rational(0)));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t s = 0; s < k; ++s) m[r][j] += (*ginv)[r][s] * basis[s][j];
  return m;
}

inline std::vector<Rational> apply_matrix(const RationalMatrix& m, const RationalVector& y) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != y.dim()) throw DimensionMismatch("matrix/vector size mismatch");
    for (std::size_t j = 0; j < y.dim(); ++j) out[r] += m[r][j] * y[j];
  }
  return out;
}

inline RationalVector combine(const std::vector<RationalVector>& basis, const std::vector<Rational>& coeffs) {
  RationalVector v(basis.at(0).dim());
  for (std::size_t k = 0; k < basis.size(); ++k) v += coeffs[k] * basis[k];
  return v;
}

/// Basis of the orthogonal complement of span(vs) in R^dim.
inline std::vector<RationalVector> orthogonal_complement(const std::vector<RationalVector>& vs, std::size_t dim) {
  // Row-reduce the vs matrix; free columns give kernel vectors.
  RationalMatrix a;
  for (const auto& v : vs) a.push_back(v.components());
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < a.size(); ++col) {
    std::size_t p = row;
    while (p < a.size() && a[p][col] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    Rational lead = a[row][col];
    for (auto& x : a[row]) x /= lead;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < dim; ++j) a[r][j] -= f * a[row][j];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }
  std::vector<RationalVector> out;
  for (std::size_t free = 0; free < dim; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end()) continue;
    RationalVector k(dim);
    k[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) k[pivot_col[r]] = -a[r][free];
    out.push_back(std::move(k));
  }
  return out;
}

}  // namespace parallelo
