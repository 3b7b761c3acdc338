#pragma once

#include <cstdint>
#include <optional>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "parallelo/density.hpp"
#include "parallelo/families.hpp"
#include "parallelo/graph.hpp"
#include "parallelo/independence.hpp"
#include "parallelo/lattice.hpp"
#include "parallelo/polytope.hpp"

namespace parallelo {

/// The 2^n coloring by cosets of (1/2)L / L: x gets the coset of the
/// lexicographically smallest closest point of (1/2)L.
class CosetColoring {
 public:
  explicit CosetColoring(PolytopeData p)
      : p_(std::move(p)), half_(p_.lattice.scaled(Rational(1, 2))), rank_(static_cast<int>(p_.lattice.basis().size())) {}

  static CosetColoring for_family(const FamilySpec& f) { return CosetColoring(family_polytope(f)); }

  const PolytopeData& polytope() const { return p_; }
  int rank() const { return rank_; }
  int color_count() const { return 1 << rank_; }

  /// lambda(x): the cell of (1/2)L whose half-open translate of P/2 holds x.
  RationalVector representative(const RationalVector& x) const { return closest_lattice_points(half_, x).front(); }

  /// Color of a point of (1/2)L: coordinates of 2*lambda in the basis of L, mod 2.
  int coset_index(const RationalVector& lambda) const {
    auto c = p_.lattice.coordinates(Rational(2) * lambda);
    if (!c) throw std::invalid_argument("coset_index: " + lambda.to_string() + " is not in L/2");
    int idx = 0;
    for (int i = 0; i < rank_; ++i)
      if (mpz_odd_p((*c)[static_cast<std::size_t>(i)].get_mpz_t())) idx |= 1 << i;
    return idx;
  }

  int color(const RationalVector& x) const { return coset_index(representative(x)); }

 private:
  PolytopeData p_;
  LatticeSpec half_;
  int rank_;
};

// ---------------------------------------------------------------------------
// Boundary points of P

/// Vertices of P on each facet (functionals tight at >= 1 vertex).
inline std::vector<std::vector<RationalVector>> facet_vertex_sets(const PolytopeData& p) {
  std::vector<std::vector<RationalVector>> out;
  for (const auto& f : p.gauge.functionals()) {
    std::vector<RationalVector> tight;
    for (const auto& v : p.vertices)
      if (dot(f.a, v) == f.c) tight.push_back(v);
    if (!tight.empty()) out.push_back(std::move(tight));
  }
  return out;
}

/// Deterministic unit-sphere catalog: vertices, then facet midpoints.
inline std::vector<RationalVector> boundary_catalog(const PolytopeData& p) {
  std::vector<RationalVector> out = p.vertices;
  for (const auto& face : facet_vertex_sets(p)) {
    RationalVector m(face[0].dim());
    for (const auto& v : face) m += v;
    out.push_back(m * Rational(1, static_cast<long>(face.size())));
  }
  detail::sort_unique(out);
  return out;
}

namespace detail {

inline Rational sample_rational(std::mt19937_64& rng, long span, long max_den) {
  std::uniform_int_distribution<long> den(1, max_den);
  long d = den(rng);
  std::uniform_int_distribution<long> num(-span * d, span * d);
  return make_rational(num(rng), d);
}

/// Random rational point of the unit sphere: convex combination of up to
/// dim+1 vertices of one facet with positive integer weights.
inline RationalVector sample_boundary_point(std::mt19937_64& rng, const std::vector<std::vector<RationalVector>>& faces) {
  std::uniform_int_distribution<std::size_t> pick_face(0, faces.size() - 1);
  const auto& face = faces[pick_face(rng)];
  std::uniform_int_distribution<std::size_t> pick_vertex(0, face.size() - 1);
  std::uniform_int_distribution<long> weight(1, 9);
  const std::size_t terms = 1 + pick_vertex(rng) % (face[0].dim() + 1);
  RationalVector sum(face[0].dim());
  long total = 0;
  for (std::size_t t = 0; t < terms; ++t) {
    long w = weight(rng);
    sum += Rational(w) * face[pick_vertex(rng)];
    total += w;
  }
  return sum * make_rational(1, total);
}

}  // namespace detail

struct ColoringViolation {
  RationalVector x;
  RationalVector y;
  int color;
};

struct ColoringReport {
  std::string family;
  int color_count = 0;
  std::size_t sampled_pairs = 0;
  std::size_t catalog_pairs = 0;
  std::size_t cover_checks = 0;
  std::vector<ColoringViolation> violations;
  std::size_t cover_failures = 0;  // points not in the half-cell of their representative
  std::vector<int> colors_seen;    // distinct colors over the lattice representatives checked

  bool holds() const { return violations.empty() && cover_failures == 0; }
};

/// Checks pairs (x, x + b) with gauge(b) = 1: `samples` random pairs from
/// `seed`, then the deterministic catalog x in {0, +-b'/2, beta_i/2} for
/// catalog points b, b'.
inline ColoringReport verify_coloring(const CosetColoring& c, std::size_t samples, std::uint64_t seed,
                                      const std::string& family = "") {
  const auto& p = c.polytope();
  ColoringReport rep;
  rep.family = family;
  rep.color_count = c.color_count();
  const auto faces = facet_vertex_sets(p);
  const auto basis = p.lattice.basis();
  auto check = [&](const RationalVector& x, const RationalVector& b) {
    if (p.gauge(b) != 1) throw CrossCheckMismatch("boundary sample off the unit sphere: " + b.to_string());
    RationalVector y = x + b;
    int cx = c.color(x), cy = c.color(y);
    if (cx == cy) rep.violations.push_back({x, y, cx});
  };
  auto cover = [&](const RationalVector& x) {
    ++rep.cover_checks;
    if (p.gauge(x - c.representative(x)) * 2 > 1) ++rep.cover_failures;
  };

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    RationalVector x(p.lattice.ambient_dim());
    for (const auto& bv : basis) x += detail::sample_rational(rng, 3, 12) * bv;
    RationalVector b = detail::sample_boundary_point(rng, faces);
    cover(x);
    check(x, b);
    ++rep.sampled_pairs;
  }

  const auto catalog = boundary_catalog(p);
  std::vector<RationalVector> starts{RationalVector(p.lattice.ambient_dim())};
  for (const auto& b : catalog) {
    starts.push_back(Rational(1, 2) * b);
    starts.push_back(Rational(-1, 2) * b);
  }
  for (const auto& bv : basis) starts.push_back(Rational(1, 2) * bv);
  for (const auto& x : starts) {
    cover(x);
    for (const auto& b : catalog) {
      check(x, b);
      ++rep.catalog_pairs;
    }
  }

  // Colors of the 3^rank representatives sum e_i beta_i / 2, e_i in {-1,0,1}.
  std::set<int> seen;
  std::vector<int> e(basis.size(), -1);
  while (true) {
    RationalVector lam(p.lattice.ambient_dim());
    for (std::size_t i = 0; i < basis.size(); ++i) lam += make_rational(e[i], 2) * basis[i];
    seen.insert(c.coset_index(lam));
    std::size_t i = 0;
    while (i < e.size() && e[i] == 1) e[i++] = -1;
    if (i == e.size()) break;
    ++e[i];
  }
  rep.colors_seen.assign(seen.begin(), seen.end());
  return rep;
}

/// The color class of the coset coloring holding the most graph vertices.
/// It is independent whenever the coloring is proper on the vertex set.
inline std::vector<int> largest_color_class(const GeometricGraph& g, const CosetColoring& c) {
  std::vector<std::vector<int>> classes(static_cast<std::size_t>(c.color_count()));
  for (int v = 0; v < static_cast<int>(g.size()); ++v) classes[static_cast<std::size_t>(c.color(g.vertex(v)))].push_back(v);
  std::size_t best = 0;
  for (std::size_t k = 1; k < classes.size(); ++k)
    if (classes[k].size() > classes[best].size()) best = k;
  return classes[best];
}

// ---------------------------------------------------------------------------
// Exact coloring

struct ColoringSearch {
  std::optional<std::vector<int>> coloring;  // a proper k-coloring, if found
  bool exhausted = false;                    // node budget ran out before a decision
  std::uint64_t nodes = 0;
};

/// DSATUR backtracking: decides k-colorability exactly unless the node
/// budget runs out. Colors are assigned in increasing order, so the search
/// never explores a color permutation twice.
inline ColoringSearch k_coloring(const GeometricGraph& g, int k, std::uint64_t max_nodes = 10'000'000) {
  const int n = static_cast<int>(g.size());
  ColoringSearch res;
  std::vector<int> col(static_cast<std::size_t>(n), -1);
  if (n == 0) {
    res.coloring = col;
    return res;
  }
  if (k <= 0) return res;
  // forbid[v][c]: number of colored neighbors of v with color c.
  std::vector<std::vector<int>> forbid(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(k), 0));
  std::vector<int> sat(static_cast<std::size_t>(n), 0);
  std::function<bool(int, int)> rec = [&](int colored, int used) -> bool {
    if (colored == n) return true;
    if (++res.nodes > max_nodes) {
      res.exhausted = true;
      return false;
    }
    int v = -1;
    for (int u = 0; u < n; ++u) {
      if (col[static_cast<std::size_t>(u)] >= 0) continue;
      if (v < 0 || sat[static_cast<std::size_t>(u)] > sat[static_cast<std::size_t>(v)] ||
          (sat[static_cast<std::size_t>(u)] == sat[static_cast<std::size_t>(v)] && g.degree(u) > g.degree(v)))
        v = u;
    }
    const int limit = std::min(k, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (forbid[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)]) continue;
      col[static_cast<std::size_t>(v)] = c;
      for (int w : g.neighbors(v))
        if (forbid[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)]++ == 0) ++sat[static_cast<std::size_t>(w)];
      if (rec(colored + 1, std::max(used, c + 1))) return true;
      for (int w : g.neighbors(v))
        if (--forbid[static_cast<std::size_t>(w)][static_cast<std::size_t>(c)] == 0) --sat[static_cast<std::size_t>(w)];
      col[static_cast<std::size_t>(v)] = -1;
      if (res.exhausted) return false;
    }
    return false;
  };
  if (rec(0, 0)) res.coloring = col;
  return res;
}

inline bool is_proper_coloring(const GeometricGraph& g, const std::vector<int>& col) {
  if (col.size() != g.size()) return false;
  for (auto [i, j] : g.edges())
    if (col[static_cast<std::size_t>(i)] == col[static_cast<std::size_t>(j)]) return false;
  return true;
}

/// Exact chromatic number, or nullopt if the budget runs out.
inline std::optional<int> chromatic_number(const GeometricGraph& g, std::uint64_t max_nodes = 10'000'000) {
  for (int k = g.size() ? 1 : 0; k <= static_cast<int>(g.size()); ++k) {
    auto r = k_coloring(g, k, max_nodes);
    if (r.coloring) return k;
    if (r.exhausted) return std::nullopt;
  }
  return std::nullopt;
}

/// Plain backtracking in vertex order with no heuristics; used to re-check
/// small witnesses independently of DSATUR.
inline bool brute_k_colorable(const GeometricGraph& g, int k) {
  const int n = static_cast<int>(g.size());
  std::vector<int> col(static_cast<std::size_t>(n), -1);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == n) return true;
    for (int c = 0; c < k; ++c) {
      bool ok = true;
      for (int w : g.neighbors(v))
        if (w < v && col[static_cast<std::size_t>(w)] == c) ok = false;
      if (!ok) continue;
      col[static_cast<std::size_t>(v)] = c;
      if (rec(v + 1)) return true;
    }
    col[static_cast<std::size_t>(v)] = -1;
    return false;
  };
  return rec(0);
}

struct WitnessResult {
  bool found = false;
  int k = 0;
  std::vector<int> vertices;  // indices into the searched graph
  std::optional<GeometricGraph> subgraph;
  std::vector<int> coloring;  // a proper k-coloring of the subgraph
  bool verified = false;      // brute-force re-check: not (k-1)-colorable, k-colorable
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

/// Grows breadth-first balls around `root` until the induced subgraph is not
/// (k-1)-colorable, then drops vertices while that stays true.
inline WitnessResult chromatic_witness_search(const GeometricGraph& g, int k, std::uint64_t max_nodes = 5'000'000,
                                              int root = 0) {
  WitnessResult res;
  res.k = k;
  if (k < 1 || g.size() == 0) return res;
  std::vector<int> order{root}, seen(g.size(), 0);
  seen[static_cast<std::size_t>(root)] = 1;
  for (std::size_t h = 0; h < order.size(); ++h) {
    std::vector<int> nb(g.neighbors(order[h]).begin(), g.neighbors(order[h]).end());
    for (int w : nb)
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        order.push_back(w);
      }
  }
  auto needs_k = [&](std::vector<int> vs) -> std::optional<bool> {
    std::sort(vs.begin(), vs.end());
    auto r = k_coloring(g.induced(vs), k - 1, max_nodes - std::min(max_nodes, res.nodes));
    res.nodes += r.nodes;
    if (r.exhausted) return std::nullopt;
    return !r.coloring.has_value();
  };
  std::vector<int> current;
  bool hit = false;
  for (int v : order) {
    current.push_back(v);
    auto r = needs_k(current);
    if (!r) {
      res.exhausted = true;
      return res;
    }
    if (*r) {
      hit = true;
      break;
    }
  }
  if (!hit) return res;
  // Vertex-critical reduction: latest-added vertices are tried first.
  for (std::size_t i = current.size(); i-- > 0;) {
    std::vector<int> trial = current;
    trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(i));
    auto r = needs_k(trial);
    if (!r) break;
    if (*r) current = std::move(trial);
  }
  std::sort(current.begin(), current.end());
  res.found = true;
  res.vertices = current;
  res.subgraph = g.induced(current);
  auto col = k_coloring(*res.subgraph, k, max_nodes);
  res.nodes += col.nodes;
  if (col.coloring && is_proper_coloring(*res.subgraph, *col.coloring)) res.coloring = *col.coloring;
  res.verified = !res.coloring.empty() && brute_k_colorable(*res.subgraph, k) &&
                 (k == 1 || !brute_k_colorable(*res.subgraph, k - 1));
  return res;
}

// ---------------------------------------------------------------------------
// Chromatic bounds

struct ChromaticReport {
  std::string family;
  int upper = 0;           // colors of the coset coloring
  int lower = 0;           // ceil(1 / density bound)
  Rational density_bound;  // max local density (or independence ratio) behind `lower`
  std::string lower_source;

  bool equal() const { return lower == upper; }
};

inline ChromaticReport chromatic_report(const FamilySpec& f) {
  ChromaticReport r;
  r.family = f.label();
  r.upper = CosetColoring::for_family(f).color_count();
  switch (f.family) {
    case Family::An:
      r.density_bound = verify_an_bound(f.dim).max_density;
      r.lower_source = "chain-clique density certificate";
      break;
    case Family::Dn:
      r.density_bound = verify_dn_bound(f.dim).max_density;
      r.lower_source = "D_n clique density certificate";
      break;
    case Family::Hexagon:
      r.density_bound = verify_hexagon_bound(hexagon_pattern(*f.basis)).assembled_bound;
      r.lower_source = "hexagon component density certificate";
      break;
    case Family::Cube: {
      auto g = family_unit_distance_graph(f, 1);
      r.density_bound = max_independent_set(g).ratio;
      r.lower_source = "independence ratio of {0,1}^n";
      break;
    }
    case Family::Counterexample:
      throw UnsupportedFamily("no chromatic report for the counterexample graph");
  }
  r.lower = static_cast<int>(to_int64(ceil_of(Rational(1 / r.density_bound))));
  return r;
}

}  // namespace parallelo
