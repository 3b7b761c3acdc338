#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "parallelo/graph.hpp"
#include "parallelo/hexagon.hpp"
#include "parallelo/polytope.hpp"

namespace parallelo {

/// Closed neighborhood C u N(C), sorted. Every member of C must have a
/// complete 1-step neighborhood.
inline std::vector<int> closed_neighborhood(const GeometricGraph& g, const std::vector<int>& C) {
  std::set<int> out;
  for (int c : C) {
    if (g.depth(c) < 1)
      throw MarginViolation("vertex " + g.vertex(c).to_string() + " is too close to the region boundary");
    out.insert(c);
    for (int j : g.neighbors(c)) out.insert(j);
  }
  return {out.begin(), out.end()};
}

/// Same, counting only class-B vertices.
inline std::vector<int> closed_neighborhood_b(const GeometricGraph& g, const std::vector<int>& C) {
  std::vector<int> out;
  for (int v : closed_neighborhood(g, C))
    if (g.vertex_class(v) == VertexClass::B) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Certificates

struct DensityEntry {
  std::string structure;
  int size = 0;
  long neighborhood = 0;  // |N[C]| or |N_B[C]|
  Rational density;
  std::optional<Rational> paper_density;
  bool cross_checked = false;  // brute-force count agreed with the closed form

  bool matches_paper() const { return !paper_density || *paper_density == density; }
};

struct DensityCertificate {
  std::string family;
  int dimension = 0;
  std::string neighborhood_kind = "N";  // "N" or "N_B"
  std::vector<DensityEntry> entries;
  Rational max_density;
  Rational assembled_bound;
  Rational paper_bound;
  std::vector<std::string> maximizers;
  std::vector<std::string> notes;

  bool bound_matches_paper() const { return assembled_bound == paper_bound; }
  bool entries_match_paper() const {
    return std::all_of(entries.begin(), entries.end(), [](const DensityEntry& e) { return e.matches_paper(); });
  }
};

inline nlohmann::ordered_json to_json(const DensityCertificate& c) {
  nlohmann::ordered_json j;
  j["family"] = c.family;
  j["dimension"] = c.dimension;
  j["neighborhood"] = c.neighborhood_kind;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : c.entries) {
    nlohmann::ordered_json x;
    x["structure"] = e.structure;
    x["size"] = e.size;
    x["neighborhood_size"] = e.neighborhood;
    x["density"] = to_fraction_string(e.density);
    x["paper_density"] = e.paper_density ? nlohmann::ordered_json(to_fraction_string(*e.paper_density)) : nullptr;
    x["matches_paper"] = e.matches_paper();
    x["cross_checked"] = e.cross_checked;
    j["entries"].push_back(std::move(x));
  }
  j["max_density"] = to_fraction_string(c.max_density);
  j["assembled_bound"] = to_fraction_string(c.assembled_bound);
  j["paper_bound"] = to_fraction_string(c.paper_bound);
  j["bound_matches_paper"] = c.bound_matches_paper();
  j["entries_match_paper"] = c.entries_match_paper();
  j["maximizers"] = c.maximizers;
  j["notes"] = c.notes;
  return j;
}

inline void write_csv(std::ostream& os, const DensityCertificate& c) {
  os << "structure,size,neighborhood_size,density,density_decimal,paper_density,matches_paper,cross_checked\n";
  for (const auto& e : c.entries) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9f", to_double(e.density));
    os << '"' << e.structure << "\"," << e.size << ',' << e.neighborhood << ',' << to_fraction_string(e.density) << ','
       << buf << ',' << (e.paper_density ? to_fraction_string(*e.paper_density) : "") << ','
       << (e.matches_paper() ? "true" : "false") << ',' << (e.cross_checked ? "true" : "false") << '\n';
  }
}

inline void write_text(std::ostream& os, const DensityCertificate& c) {
  os << c.family << " n=" << c.dimension << "\n";
  for (const auto& e : c.entries) {
    os << "  " << e.structure << "  |C|=" << e.size << "  |" << c.neighborhood_kind << "[C]|=" << e.neighborhood
       << "  delta=" << to_fraction_string(e.density);
    if (e.paper_density) os << "  paper=" << to_fraction_string(*e.paper_density) << (e.matches_paper() ? "" : "  MISMATCH");
    os << '\n';
  }
  os << "  max density " << to_fraction_string(c.max_density) << ", bound " << to_fraction_string(c.assembled_bound)
     << ", paper " << to_fraction_string(c.paper_bound) << (c.bound_matches_paper() ? " (match)" : " (MISMATCH)") << '\n';
  for (const auto& n : c.notes) os << "  note: " << n << '\n';
}

namespace detail {

inline void finish_certificate(DensityCertificate& c) {
  c.max_density = 0;
  for (const auto& e : c.entries) c.max_density = std::max(c.max_density, e.density);
  for (const auto& e : c.entries)
    if (e.density == c.max_density) c.maximizers.push_back(e.structure);
}

inline Rational pow2(int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= 2;
  return r;
}

inline std::vector<RationalVector> halves(const std::vector<RationalVector>& vs) {
  std::vector<RationalVector> out;
  for (const auto& v : vs) out.push_back(Rational(1, 2) * v);
  return out;
}

inline bool is_clique(const GeometricGraph& g, const std::vector<int>& C) {
  for (std::size_t a = 0; a < C.size(); ++a)
    for (std::size_t b = a + 1; b < C.size(); ++b)
      if (!g.adjacent(C[a], C[b])) return false;
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// A_n

/// The clique {0, p_H(u_1)/2, ..., p_H(u_s)/2} with u_k = (1^{w_k}, 0^{n+1-w_k}).
struct ChainClique {
  int n = 0;
  std::vector<int> weights;  // strictly increasing, in [1, n]

  std::vector<RationalVector> points() const {
    const std::size_t d = static_cast<std::size_t>(n) + 1;
    std::vector<RationalVector> out = {RationalVector(d)};
    for (int w : weights) {
      RationalVector u(d);
      for (int i = 0; i < w; ++i) u[static_cast<std::size_t>(i)] = 1;
      out.push_back(Rational(1, 2) * project_to_hyperplane(u));
    }
    return out;
  }
  std::string name() const {
    std::string s = "chain{";
    for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
    return s + "}";
  }
  bool is_full_chain() const {
    if (static_cast<int>(weights.size()) != n) return false;
    for (int i = 0; i < n; ++i)
      if (weights[static_cast<std::size_t>(i)] != i + 1) return false;
    return true;
  }
};

/// All weight sets, i.e. subsets of {1..n}, ordered by bitmask.
inline std::vector<ChainClique> enumerate_chain_cliques(int n) {
  if (n < 2 || n > 12) throw DimensionMismatch("enumerate_chain_cliques needs 2 <= n <= 12");
  std::vector<ChainClique> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ChainClique c{n, {}};
    for (int w = 1; w <= n; ++w)
      if (mask & (1u << (w - 1))) c.weights.push_back(w);
    out.push_back(std::move(c));
  }
  return out;
}

/// (s+1) 2^{n+1} - (sum_i 2^{n+1-(w_i - w_{i-1})} + 2^{w_s}), w_0 = 0.
inline long an_neighborhood_size_formula(int n, const std::vector<int>& weights) {
  const long s = static_cast<long>(weights.size());
  long sub = 0;
  int prev = 0;
  for (int w : weights) {
    if (w <= prev || w > n) throw std::invalid_argument("weights must be strictly increasing in [1, n]");
    sub += 1L << (n + 1 - (w - prev));
    prev = w;
  }
  sub += 1L << prev;
  return (s + 1) * (1L << (n + 1)) - sub;
}

/// The A_n Cayley graph on the word ball of radius 2 around 0; all chain
/// cliques and their neighborhoods fit.
inline GeometricGraph an_density_graph(int n) { return build_cayley_ball(detail::halves(vertices_an(n)), 2); }

inline DensityCertificate verify_an_bound(int n, int brute_force_cap = 8) {
  DensityCertificate c;
  c.family = "an";
  c.dimension = n;
  c.paper_bound = 1 / detail::pow2(n);
  std::optional<GeometricGraph> g;
  if (n <= brute_force_cap) g = an_density_graph(n);
  for (const auto& cl : enumerate_chain_cliques(n)) {
    const long formula = an_neighborhood_size_formula(n, cl.weights);
    const int size = static_cast<int>(cl.weights.size()) + 1;
    DensityEntry e{cl.name(), size, formula, make_rational(size, formula), std::nullopt, false};
    if (g) {
      std::vector<int> C;
      for (const auto& p : cl.points()) C.push_back(g->find(p));
      if (std::find(C.begin(), C.end(), -1) != C.end() || !detail::is_clique(*g, C))
        throw CrossCheckMismatch(cl.name() + " is not a clique of the Cayley graph");
      const long brute = static_cast<long>(closed_neighborhood(*g, C).size());
      if (brute != formula)
        throw CrossCheckMismatch(cl.name() + ": brute force |N[C]| = " + std::to_string(brute) + ", formula " +
                                 std::to_string(formula));
      e.cross_checked = true;
    }
    // |N[C]| >= (s+1) 2^n with equality iff full chain.
    const long floor_bound = static_cast<long>(size) << n;
    if (formula < floor_bound || (formula == floor_bound) != cl.is_full_chain())
      throw CrossCheckMismatch(cl.name() + ": neighborhood lower bound (s+1)2^n fails");
    if (e.density > c.paper_bound) throw BoundViolated(cl.name() + " exceeds 2^-n");
    c.entries.push_back(std::move(e));
  }
  detail::finish_certificate(c);
  c.assembled_bound = c.max_density;
  return c;
}

// ---------------------------------------------------------------------------
// D_n

/// Subsets of C_max = {0, v1/2, v2/2, v3/2} containing 0, with
/// v1 = (0,...,0,1), v2 = (1/2,...,1/2), v3 = (-1/2,1/2,...,1/2).
struct DnClique {
  int n = 0;
  unsigned mask = 0;  // bit k-1 set iff v_k/2 is included

  std::vector<RationalVector> points() const {
    const std::size_t d = static_cast<std::size_t>(n);
    std::vector<RationalVector> out = {RationalVector(d)};
    if (mask & 1u) {
      RationalVector v(d);
      v[d - 1] = Rational(1, 2);
      out.push_back(v);
    }
    if (mask & 2u) {
      RationalVector v(d);
      for (auto i = 0u; i < d; ++i) v[i] = Rational(1, 4);
      out.push_back(v);
    }
    if (mask & 4u) {
      RationalVector v(d);
      for (auto i = 0u; i < d; ++i) v[i] = Rational(1, 4);
      v[0] = Rational(-1, 4);
      out.push_back(v);
    }
    return out;
  }
  std::string name() const {
    std::string s = "{0";
    for (int k = 1; k <= 3; ++k)
      if (mask & (1u << (k - 1))) s += ",v" + std::to_string(k) + "/2";
    return s + "}";
  }
};

/// The published closed form for a C_max subset, or nullopt when none is listed.
inline std::optional<Rational> dn_paper_density(int n, unsigned mask) {
  const Rational p = detail::pow2(n);
  switch (__builtin_popcount(mask)) {
    case 0: return Rational(1 / (1 + p + n));
    case 1: return (mask & 1u) ? Rational(1 / (Rational(3, 4) * p + 2 * n)) : Rational(1 / (p + n));
    case 2: return Rational(1 / (Rational(5, 6) * p + n - Rational(1, 3)));
    case 3: return Rational(1 / (Rational(3, 4) * p + n - 1));
  }
  return std::nullopt;
}

inline GeometricGraph dn_density_graph(int n) { return build_cayley_ball(detail::halves(vertices_dn(n)), 2); }

// ---------------------------------------------------------------------------
// Cube

/// {0,1}^n under the sup norm is a complete graph, so alpha = 1 and the
/// independence ratio is 2^-n.
inline DensityCertificate verify_cube_bound(int n) {
  if (n < 1 || n > 12) throw DimensionMismatch("verify_cube_bound supports 1 <= n <= 12");
  auto g = build_unit_distance_graph(cube_points(n), gauge_sup(n));
  const std::size_t v = g.size();
  const bool complete = g.edge_count() == v * (v - 1) / 2;
  DensityCertificate c;
  c.family = "cube";
  c.dimension = n;
  const Rational d = complete ? Rational(1, static_cast<unsigned long>(v)) : Rational(0);
  if (!complete) c.notes.push_back("{0,1}^n graph is not complete");
  c.entries.push_back({"{0,1}^n", 1, static_cast<long>(v), d, Rational(1 / detail::pow2(n)), complete});
  detail::finish_certificate(c);
  c.assembled_bound = c.max_density;
  c.paper_bound = 1 / detail::pow2(n);
  return c;
}

inline DensityCertificate verify_dn_bound(int n) {
  if (n < 4 || n > 10) throw DimensionMismatch("verify_dn_bound needs 4 <= n <= 10");
  DensityCertificate c;
  c.family = "dn";
  c.dimension = n;
  c.paper_bound = 1 / (Rational(3, 4) * detail::pow2(n) + n - 1);
  const auto g = dn_density_graph(n);
  for (unsigned mask = 0; mask < 8; ++mask) {
    DnClique cl{n, mask};
    std::vector<int> C;
    for (const auto& p : cl.points()) C.push_back(g.find(p));
    if (std::find(C.begin(), C.end(), -1) != C.end() || !detail::is_clique(g, C))
      throw CrossCheckMismatch(cl.name() + " is not a clique of the Cayley graph");
    const long nb = static_cast<long>(closed_neighborhood(g, C).size());
    const int size = static_cast<int>(C.size());
    DensityEntry e{cl.name(), size, nb, make_rational(size, nb), dn_paper_density(n, mask), true};
    if (e.density > c.paper_bound) throw BoundViolated(cl.name() + " exceeds the D_n bound");
    c.entries.push_back(std::move(e));
  }
  detail::finish_certificate(c);
  c.assembled_bound = c.max_density;
  for (const auto& e : c.entries)
    if (!e.matches_paper())
      c.notes.push_back(e.structure + ": computed " + to_fraction_string(e.density) + " vs listed " +
                        to_fraction_string(*e.paper_density));
  return c;
}

// ---------------------------------------------------------------------------
// Hexagon

enum class HexComponentKind { ASingleton, BSingleton, ABPair, BBPair, ABBTriple, BABTriple };

inline std::string hex_kind_name(HexComponentKind k) {
  switch (k) {
    case HexComponentKind::ASingleton: return "A-singleton";
    case HexComponentKind::BSingleton: return "B-singleton";
    case HexComponentKind::ABPair: return "AB-pair";
    case HexComponentKind::BBPair: return "BB-pair";
    case HexComponentKind::ABBTriple: return "ABB-triple";
    case HexComponentKind::BABTriple: return "BAB-triple";
  }
  return "?";
}

inline Rational hex_paper_density(HexComponentKind k) {
  switch (k) {
    case HexComponentKind::ASingleton: return Rational(1, 6);
    case HexComponentKind::BSingleton: return Rational(1, 4);
    case HexComponentKind::ABPair: return Rational(2, 7);
    case HexComponentKind::BBPair: return Rational(1, 3);
    case HexComponentKind::ABBTriple: return Rational(3, 8);
    case HexComponentKind::BABTriple: return Rational(3, 8);
  }
  return 0;
}

/// Classifies a connected vertex set by its A/B counts and edge count;
/// nullopt when it falls outside the six known kinds.
inline std::optional<HexComponentKind> classify_hex_component(const GeometricGraph& g, const std::vector<int>& C) {
  int a = 0, edges = 0;
  for (int v : C) a += g.vertex_class(v) == VertexClass::A;
  for (std::size_t i = 0; i < C.size(); ++i)
    for (std::size_t j = i + 1; j < C.size(); ++j) edges += g.adjacent(C[i], C[j]);
  const int b = static_cast<int>(C.size()) - a;
  if (C.size() == 1) return a ? HexComponentKind::ASingleton : HexComponentKind::BSingleton;
  if (C.size() == 2) {
    if (a == 1) return HexComponentKind::ABPair;
    if (b == 2) return HexComponentKind::BBPair;
    return std::nullopt;
  }
  if (C.size() == 3 && a == 1 && b == 2) return edges == 3 ? HexComponentKind::ABBTriple : HexComponentKind::BABTriple;
  return std::nullopt;
}

struct HexComponent {
  HexComponentKind kind;
  std::vector<int> vertices;
  long nb_size;
  Rational density;
};

/// All connected vertex sets of size <= max_size that contain an anchor and
/// have no pair at gauge distance exactly 1. Anchors should cover the
/// vertex classes modulo translation.
inline std::vector<std::vector<int>> enumerate_avoiding_components(const GeometricGraph& g, const GaugeNorm& gauge,
                                                                   const std::vector<int>& anchors, int max_size) {
  const ScaledGauge sg(gauge, g.scale());
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  for (int a : anchors) frontier.push_back({a});
  for (int size = 1; size <= max_size && !frontier.empty(); ++size) {
    std::set<std::vector<int>> next;
    for (const auto& S : frontier) {
      seen.insert(S);
      if (size == max_size) continue;
      for (int x : S)
        for (int y : g.neighbors(x)) {
          if (std::binary_search(S.begin(), S.end(), y)) continue;
          bool ok = true;
          for (int z : S)
            if (sg.is_unit_diff(g.point(y), g.point(z))) {
              ok = false;
              break;
            }
          if (!ok) continue;
          auto T = S;
          T.insert(std::lower_bound(T.begin(), T.end(), y), y);
          next.insert(std::move(T));
        }
    }
    frontier.assign(next.begin(), next.end());
  }
  return {seen.begin(), seen.end()};
}

/// Exhaustive component search in the pattern graph; every component up to
/// size 4 must be one of the six known kinds and none may have size 4.
inline DensityCertificate verify_hexagon_bound(const HexagonPattern& h) {
  DensityCertificate c;
  c.family = "hexagon";
  c.dimension = 2;
  c.neighborhood_kind = "N_B";
  c.paper_bound = Rational(1, 4);
  Rational ext = 0;
  for (const auto& v : h.v) ext = std::max(ext, sup_extent(v));
  // Components of size <= 4 around the anchors, plus their neighborhoods,
  // stay within 6 edge steps of 0.
  const auto g = build_hex_pattern_graph(h, 8 * ext);
  const auto gauge = gauge_planar(h.basis);
  std::vector<int> anchors = {g.find(RationalVector(h.basis.ambient_dim())), g.find(h.v[0]), g.find(h.v[1])};
  for (int a : anchors)
    if (a < 0 || g.depth(a) < 2) throw MarginViolation("hexagon search region too small");

  std::map<HexComponentKind, HexComponent> found;
  for (const auto& S : enumerate_avoiding_components(g, gauge, anchors, 4)) {
    auto kind = classify_hex_component(g, S);
    if (!kind) {
      std::string pts;
      for (int v : S) pts += g.vertex(v).to_string() + " ";
      throw UnknownComponentType("component outside the taxonomy: " + pts);
    }
    const long nb = static_cast<long>(closed_neighborhood_b(g, S).size());
    HexComponent comp{*kind, S, nb, make_rational(static_cast<long>(S.size()), nb)};
    auto it = found.find(*kind);
    if (it == found.end()) {
      found.emplace(*kind, comp);
    } else if (it->second.density != comp.density) {
      throw CrossCheckMismatch(hex_kind_name(*kind) + " has two different B-densities");
    }
  }
  for (const auto& [kind, comp] : found) {
    std::string desc = hex_kind_name(kind) + " e.g.";
    for (int v : comp.vertices) desc += " " + g.vertex(v).to_string();
    c.entries.push_back({desc, static_cast<int>(comp.vertices.size()), comp.nb_size, comp.density,
                         hex_paper_density(kind), true});
  }
  detail::finish_certificate(c);
  // B is twice as dense as A, so B carries 2/3 of the vertices.
  c.assembled_bound = Rational(2, 3) * c.max_density;
  if (c.assembled_bound > c.paper_bound) throw BoundViolated("hexagon assembled bound exceeds 1/4");
  if (found.size() != 6) c.notes.push_back("only " + std::to_string(found.size()) + " of 6 component kinds occur");
  return c;
}

// ---------------------------------------------------------------------------
// Decomposition of avoiding sets

struct DecompositionReport {
  std::vector<std::vector<int>> components;
  bool all_cliques = true;
  std::vector<std::pair<std::size_t, std::size_t>> overlapping;  // component index pairs
  bool disjoint() const { return overlapping.empty(); }
};

/// Splits U into connected components of g and checks that their closed
/// neighborhoods (class-B only if `b_only`) are pairwise disjoint.
inline DecompositionReport decompose_avoiding_set(const GeometricGraph& g, const GaugeNorm& gauge, std::vector<int> U,
                                                  bool b_only = false) {
  std::sort(U.begin(), U.end());
  U.erase(std::unique(U.begin(), U.end()), U.end());
  const ScaledGauge sg(gauge, g.scale());
  for (std::size_t i = 0; i < U.size(); ++i)
    for (std::size_t j = i + 1; j < U.size(); ++j)
      if (sg.is_unit_diff(g.point(U[i]), g.point(U[j])))
        throw NotAvoiding(g.vertex(U[i]).to_string() + " and " + g.vertex(U[j]).to_string() + " are at distance 1");
  DecompositionReport rep;
  std::set<int> left(U.begin(), U.end());
  while (!left.empty()) {
    std::vector<int> comp;
    std::queue<int> q;
    q.push(*left.begin());
    left.erase(left.begin());
    while (!q.empty()) {
      int x = q.front();
      q.pop();
      comp.push_back(x);
      for (int y : g.neighbors(x))
        if (left.erase(y)) q.push(y);
    }
    std::sort(comp.begin(), comp.end());
    rep.all_cliques = rep.all_cliques && detail::is_clique(g, comp);
    rep.components.push_back(std::move(comp));
  }
  std::map<int, std::size_t> owner;
  std::set<std::pair<std::size_t, std::size_t>> overlaps;
  for (std::size_t k = 0; k < rep.components.size(); ++k) {
    auto nb = b_only ? closed_neighborhood_b(g, rep.components[k]) : closed_neighborhood(g, rep.components[k]);
    for (int v : nb) {
      auto [it, fresh] = owner.emplace(v, k);
      if (!fresh) overlaps.emplace(it->second, k);
    }
  }
  rep.overlapping.assign(overlaps.begin(), overlaps.end());
  return rep;
}

}  // namespace parallelo
