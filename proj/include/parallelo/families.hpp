#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parallelo/graph.hpp"
#include "parallelo/hexagon.hpp"
#include "parallelo/independence.hpp"
#include "parallelo/polytope.hpp"

namespace parallelo {

enum class Family { An, Dn, Hexagon, Cube, Counterexample };

inline std::string family_name(Family f) {
  switch (f) {
    case Family::An: return "an";
    case Family::Dn: return "dn";
    case Family::Hexagon: return "hexagon";
    case Family::Cube: return "cube";
    case Family::Counterexample: return "counterexample";
  }
  return "?";
}

inline std::optional<Family> parse_family(const std::string& s) {
  for (Family f : {Family::An, Family::Dn, Family::Hexagon, Family::Cube, Family::Counterexample})
    if (family_name(f) == s) return f;
  return std::nullopt;
}

/// A norm family instance: dimension for An/Dn/Cube, reduced basis for hexagons.
struct FamilySpec {
  Family family = Family::An;
  int dim = 2;
  std::optional<ReducedPlanarBasis> basis;

  static FamilySpec hexagon(const ReducedPlanarBasis& b) { return {Family::Hexagon, 2, b}; }

  std::string label() const {
    if (family == Family::Hexagon)
      return "hexagon[" + basis->beta0.to_string() + "," + basis->beta1.to_string() + "]";
    return family_name(family) + "(" + std::to_string(dim) + ")";
  }
};

inline PolytopeData family_polytope(const FamilySpec& f) {
  switch (f.family) {
    case Family::An: return polytope_an(f.dim);
    case Family::Dn: return polytope_dn(f.dim);
    case Family::Cube: return polytope_cube(f.dim);
    case Family::Hexagon: return polytope_hexagon(hexagon_pattern(*f.basis));
    case Family::Counterexample: break;
  }
  throw UnsupportedFamily("no polytope for family " + family_name(f.family));
}

/// m_1 from the tiling construction: 2^-n for every tiling family; the
/// counterexample's limit |S_N|/|V_N| is 3/4.
inline Rational lower_construction(const FamilySpec& f) {
  if (f.family == Family::Counterexample) return Rational(3, 4);
  return Rational(1) / Rational(Integer(1) << static_cast<unsigned>(f.dim));
}

/// The bound the density argument proves: 2^-n, or 1/((3/4)2^n + n - 1) for D_n.
inline Rational paper_bound(const FamilySpec& f) {
  if (f.family == Family::Dn) return 1 / (Rational(3, 4) * Rational(Integer(1) << static_cast<unsigned>(f.dim)) + f.dim - 1);
  return lower_construction(f);
}

/// The unit-distance graph of a family at box radius R. Cube: Z^n in
/// [0, R]^n (R = 1 gives {0,1}^n). Hexagon: A u B in [-R, R]^d.
/// Counterexample: G_N with N = R.
inline GeometricGraph family_unit_distance_graph(const FamilySpec& f, const Rational& R, int threads = 1) {
  if (f.family == Family::Counterexample) {
    if (R.get_den() != 1) throw std::invalid_argument("counterexample radius must be an integer N");
    return counterexample_graph(static_cast<int>(R.get_num().get_si()));
  }
  const auto p = family_polytope(f);
  ScaledPointSet pts;
  switch (f.family) {
    case Family::An: pts = half_dual_an_points(f.dim, R); break;
    case Family::Dn: pts = half_dual_dn_points(f.dim, R); break;
    case Family::Hexagon: pts = build_hex_pattern_graph(hexagon_pattern(*f.basis), R).point_set(); break;
    case Family::Cube: {
      if (R.get_den() != 1 || R < 1) throw std::invalid_argument("cube radius must be a positive integer");
      const long k = R.get_num().get_si();
      std::vector<RationalVector> v;
      IntVec cur(static_cast<std::size_t>(f.dim), 0);
      while (true) {
        RationalVector q(cur.size());
        for (std::size_t i = 0; i < cur.size(); ++i) q[i] = Rational(cur[i]);
        v.push_back(q);
        std::size_t i = 0;
        while (i < cur.size() && cur[i] == k) cur[i++] = 0;
        if (i == cur.size()) break;
        ++cur[i];
      }
      pts = make_point_set(v, 1);
      break;
    }
    case Family::Counterexample: break;
  }
  return build_unit_distance_graph(std::move(pts), p.gauge, {threads, true, unit_ball_extent(p.vertices)});
}

/// The auxiliary graph for Property D: Cayley graph on (1/2)L^# in [-R,R]
/// with half-vertex generators (An, Dn), or the hexagon pattern graph.
inline GeometricGraph family_property_d_graph(const FamilySpec& f, const Rational& R, int threads = 1) {
  auto halves = [](const std::vector<RationalVector>& vs) {
    std::vector<RationalVector> out;
    for (const auto& v : vs) out.push_back(Rational(1, 2) * v);
    return out;
  };
  BuildOptions opt;
  opt.threads = threads;
  switch (f.family) {
    case Family::An: return build_cayley_graph(half_dual_an_points(f.dim, R), halves(vertices_an(f.dim)), opt);
    case Family::Dn: return build_cayley_graph(half_dual_dn_points(f.dim, R), halves(vertices_dn(f.dim)), opt);
    case Family::Hexagon: return build_hex_pattern_graph(hexagon_pattern(*f.basis), R);
    default: break;
  }
  throw UnsupportedFamily("Property D graphs exist for an, dn and hexagon, not " + family_name(f.family));
}

/// What the density argument asserts for a Property D run: strong mode holds
/// for An and Dn; for hexagons it fails on (s_i, s_{i+3}) pairs and the weak
/// form holds.
inline bool property_d_expected_to_hold(const FamilySpec& f, bool strong) {
  return !(f.family == Family::Hexagon && strong);
}

inline RatioSequence ratio_sequence(const FamilySpec& f, const std::vector<Rational>& radii, MisBudget budget = {},
                                    int threads = 1) {
  RatioSequence s;
  s.family = f.label();
  s.dimension = f.dim;
  s.target_bound = paper_bound(f);
  s.lower_bound = lower_construction(f);
  for (const auto& R : radii) {
    auto g = family_unit_distance_graph(f, R, threads);
    s.rows.push_back({R.get_str(), g.size(), max_independent_set(g, budget)});
  }
  return s;
}

}  // namespace parallelo
