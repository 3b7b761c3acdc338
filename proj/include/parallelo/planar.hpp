#pragma once

#include <array>
#include <utility>

#include "parallelo/errors.hpp"
#include "parallelo/linalg.hpp"
#include "parallelo/vector.hpp"

namespace parallelo {

namespace detail {

/// Nearest integer with ties toward zero.
inline Integer round_half_to_zero(const Rational& r) {
  Integer f = floor_of(r);
  Rational frac = r - Rational(f);
  if (frac > Rational(1, 2)) return f + 1;
  if (frac < Rational(1, 2)) return f;
  return r > 0 ? f : Integer(f + 1);
}

}  // namespace detail

/// Lagrange-Gauss reduction of a rank-2 basis: on return |b0| <= |b1| and
/// |2<b0,b1>| <= |b0|^2. The vectors may live in any ambient dimension.
inline std::pair<RationalVector, RationalVector> lagrange_reduce(RationalVector b0, RationalVector b1) {
  if (b0.dim() != b1.dim()) throw DimensionMismatch("planar basis vectors differ in dimension");
  Rational g00 = norm2(b0), g11 = norm2(b1), g01 = dot(b0, b1);
  if (g00 * g11 - g01 * g01 == 0) throw DegenerateCell("planar basis vectors are linearly dependent");
  for (;;) {
    if (norm2(b1) < norm2(b0)) std::swap(b0, b1);
    Integer mu = detail::round_half_to_zero(dot(b0, b1) / norm2(b0));
    if (mu == 0) break;
    b1 -= Rational(mu) * b0;
  }
  return {std::move(b0), std::move(b1)};
}

/// Face-defining basis of a hexagonal planar lattice: the six vectors
/// +-beta0, +-beta1, +-beta2 are exactly the Voronoi-relevant vectors.
struct ReducedPlanarBasis {
  RationalVector beta0;
  RationalVector beta1;
  RationalVector beta2;  // beta1 - beta0

  std::size_t ambient_dim() const { return beta0.dim(); }

  /// beta_i for any integer i, using beta_{i+3} = -beta_i.
  RationalVector beta(int i) const {
    int k = ((i % 6) + 6) % 6;
    const RationalVector& b = k % 3 == 0 ? beta0 : (k % 3 == 1 ? beta1 : beta2);
    return k < 3 ? b : -b;
  }

  std::array<RationalVector, 6> relevant_vectors() const {
    return {beta(0), beta(1), beta(2), beta(3), beta(4), beta(5)};
  }
};

/// Reduces and sign-normalizes an arbitrary basis of a planar lattice.
///
/// The cell is a strict hexagon exactly when, after reduction and making
/// <beta0,beta1> >= 0, the inner product is nonzero; the reduction bound
/// 2<beta0,beta1> <= |beta0|^2 may hold with equality (this is the regular
/// hexagon and its relatives, where beta2 ties with beta1 in length).
/// Throws DegenerateCell for rectangular cells and dependent inputs.
inline ReducedPlanarBasis reduce_planar_basis(const RationalVector& b0, const RationalVector& b1) {
  if (b0.dim() < 2) throw DimensionMismatch("planar basis needs ambient dimension >= 2");
  auto [r0, r1] = lagrange_reduce(b0, b1);
  Rational ip = dot(r0, r1);
  if (ip < 0) {
    r1 = -r1;
    ip = -ip;
  }
  if (ip == 0) throw DegenerateCell("rectangular Voronoi cell: reduced basis is orthogonal " + r0.to_string() +
                                    ", " + r1.to_string());
  if (2 * ip > norm2(r0) || norm2(r0) > norm2(r1))
    throw CrossCheckMismatch("Lagrange reduction post-condition failed");
  ReducedPlanarBasis out{r0, r1, r1 - r0};
  return out;
}

}  // namespace parallelo
