#pragma once

#include <algorithm>
#include <vector>

#include "parallelo/gauge.hpp"
#include "parallelo/lattice.hpp"
#include "parallelo/vector.hpp"

namespace parallelo {

/// Orthogonal projection onto the sum-zero hyperplane.
inline RationalVector project_to_hyperplane(const RationalVector& u) {
  Rational mean = coordinate_sum(u) / Rational(static_cast<long>(u.dim()));
  RationalVector x = u;
  for (std::size_t i = 0; i < x.dim(); ++i) x[i] -= mean;
  return x;
}

/// Vertices of the Voronoi cell of A_n: p_H(u) for u in {0,1}^{n+1} minus
/// the two constant vectors. 2^{n+1} - 2 points, sorted.
inline std::vector<RationalVector> vertices_an(int n) {
  if (n < 2) throw DimensionMismatch("vertices_an needs n >= 2");
  const std::size_t d = static_cast<std::size_t>(n) + 1;
  std::vector<RationalVector> out;
  for (unsigned long mask = 1; mask + 1 < (1UL << d); ++mask) {
    RationalVector u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = (mask >> i) & 1UL ? 1 : 0;
    out.push_back(project_to_hyperplane(u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Vertices of the Voronoi cell of D_n: 2n of type (+-1,0,...,0) and 2^n of
/// type (+-1/2,...,+-1/2). Sorted.
inline std::vector<RationalVector> vertices_dn(int n) {
  if (n < 4) throw DimensionMismatch("vertices_dn needs n >= 4");
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < d; ++i) {
    out.push_back(unit_vector(d, i));
    out.push_back(-unit_vector(d, i));
  }
  for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
    RationalVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1UL ? Rational(-1, 2) : Rational(1, 2);
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Type 1 = (+-1,0,...,0), type 2 = (+-1/2,...).
inline int dn_vertex_type(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return abs(x) == Rational(1, 2); }) ? 2 : 1;
}

inline std::vector<RationalVector> vertices_cube(int n) {
  if (n < 1) throw DimensionMismatch("vertices_cube needs n >= 1");
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<RationalVector> out;
  for (unsigned long mask = 0; mask < (1UL << d); ++mask) {
    RationalVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = (mask >> i) & 1UL ? -1 : 1;
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A tiling lattice together with its Voronoi cell.
struct PolytopeData {
  LatticeSpec lattice;  // the lattice whose Voronoi cell is the unit ball
  GaugeNorm gauge;
  std::vector<RationalVector> vertices;
  std::vector<RationalVector> generators_half_dual;  // generators of the graph vertex lattice
};

inline PolytopeData polytope_an(int n) {
  auto L = LatticeSpec::an(n);
  std::vector<RationalVector> gens;
  for (const auto& g : L.dual_generators()) gens.push_back(Rational(1, 2) * g);
  return {L, gauge_an(n), vertices_an(n), gens};
}

inline PolytopeData polytope_dn(int n) {
  auto L = LatticeSpec::dn(n);
  std::vector<RationalVector> gens;
  for (const auto& g : L.dual_generators()) gens.push_back(Rational(1, 2) * g);
  return {L, gauge_dn(n), vertices_dn(n), gens};
}

/// Cube [-1,1]^n: Voronoi cell of 2Z^n; graph vertices live on Z^n.
inline PolytopeData polytope_cube(int n) {
  auto L = LatticeSpec::zn(n).scaled(2);
  std::vector<RationalVector> gens;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) gens.push_back(unit_vector(n, i));
  return {L, gauge_sup(n), vertices_cube(n), gens};
}

}  // namespace parallelo
