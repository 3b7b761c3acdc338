#pragma once

#include <array>
#include <string>

#include "parallelo/gauge.hpp"
#include "parallelo/lattice.hpp"
#include "parallelo/linalg.hpp"
#include "parallelo/planar.hpp"
#include "parallelo/polytope.hpp"

namespace parallelo {

/// Vertex labeling of a hexagonal Voronoi cell with beta_i = v_i + v_{i+1}
/// (indices mod 6), the interior points s_i = (v_{i-1} + v_{i+1}) / 2, and
/// the coset data of the vertex set A u B with A = L/2, B = V_P + L/2.
struct HexagonPattern {
  ReducedPlanarBasis basis;
  std::array<RationalVector, 6> v;
  std::array<RationalVector, 6> s;
  std::array<RationalVector, 2> a_generators;     // beta0/2, beta1/2
  std::array<RationalVector, 2> class_b_offsets;  // v0, v1

  const RationalVector& vertex(int i) const { return v[static_cast<std::size_t>(((i % 6) + 6) % 6)]; }
  const RationalVector& interior(int i) const { return s[static_cast<std::size_t>(((i % 6) + 6) % 6)]; }
  LatticeSpec lattice() const { return LatticeSpec::planar(basis.beta0, basis.beta1); }
};

namespace detail {

/// Intersection of the bisector lines <x,p> = |p|^2/2 and <x,q> = |q|^2/2
/// inside span(beta0, beta1).
inline RationalVector bisector_intersection(const ReducedPlanarBasis& b, const RationalVector& p,
                                            const RationalVector& q) {
  Rational m00 = dot(b.beta0, p), m01 = dot(b.beta1, p);
  Rational m10 = dot(b.beta0, q), m11 = dot(b.beta1, q);
  Rational r0 = norm2(p) / 2, r1 = norm2(q) / 2;
  Rational det = m00 * m11 - m01 * m10;
  if (det == 0) throw DegenerateCell("parallel bisectors");
  Rational a = (r0 * m11 - m01 * r1) / det;
  Rational c = (m00 * r1 - m10 * r0) / det;
  return a * b.beta0 + c * b.beta1;
}

}  // namespace detail

/// Builds and verifies the labeled hexagon. v0 is the intersection of the
/// bisectors of beta5 = -beta2 and beta0.
inline HexagonPattern hexagon_pattern(const ReducedPlanarBasis& b) {
  HexagonPattern h{b, {}, {}, {}, {}};
  for (int i = 0; i < 6; ++i) h.v[static_cast<std::size_t>(i)] = detail::bisector_intersection(b, b.beta(i - 1), b.beta(i));
  for (int i = 0; i < 6; ++i) h.s[static_cast<std::size_t>(i)] = Rational(1, 2) * (h.vertex(i - 1) + h.vertex(i + 1));
  h.a_generators = {Rational(1, 2) * b.beta0, Rational(1, 2) * b.beta1};
  h.class_b_offsets = {h.v[0], h.v[1]};

  const auto gauge = gauge_planar(b);
  const auto L = h.lattice();
  for (int i = 0; i < 6; ++i) {
    if (h.vertex(i) + h.vertex(i + 1) != b.beta(i))
      throw CrossCheckMismatch("hexagon labeling: beta_" + std::to_string(i) + " != v_i + v_{i+1}");
    if (gauge(h.vertex(i)) != 1) throw CrossCheckMismatch("hexagon vertex off the unit sphere");
    if (!(gauge(h.interior(i)) < 1)) throw CrossCheckMismatch("s_i is not interior");
    if (!L.contains(h.vertex(i + 2) - h.vertex(i))) throw CrossCheckMismatch("v_{i+2} - v_i not in L");
  }
  return h;
}

inline PolytopeData polytope_hexagon(const HexagonPattern& h) {
  std::vector<RationalVector> verts(h.v.begin(), h.v.end());
  std::sort(verts.begin(), verts.end());
  std::vector<RationalVector> gens = {h.a_generators[0], h.a_generators[1], h.v[0], h.v[1]};
  return {h.lattice(), gauge_planar(h.basis), verts, gens};
}

/// The A_2 lattice realized in its own plane of R^3, as a planar lattice.
inline ReducedPlanarBasis regular_hexagon_basis() {
  return reduce_planar_basis(RationalVector::from_ints({1, -1, 0}), RationalVector::from_ints({0, 1, -1}));
}

}  // namespace parallelo
