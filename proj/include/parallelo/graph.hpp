#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <unordered_map>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "parallelo/errors.hpp"
#include "parallelo/gauge.hpp"
#include "parallelo/hexagon.hpp"
#include "parallelo/lattice.hpp"
#include "parallelo/parallel.hpp"
#include "parallelo/scaled.hpp"

namespace parallelo {

/// Sorted, deduplicated points on the 1/scale grid.
struct ScaledPointSet {
  std::int64_t scale = 1;
  std::size_t dim = 0;
  std::vector<IntVec> points;
  std::optional<Rational> box_radius;  // set when the points are "everything in [-R,R]^d"

  void normalize() {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
};

inline ScaledPointSet make_point_set(const std::vector<RationalVector>& pts, std::int64_t scale = 0) {
  ScaledPointSet s;
  s.scale = scale > 0 ? scale : grid_scale(pts);
  s.dim = pts.empty() ? 0 : pts[0].dim();
  for (const auto& p : pts) s.points.push_back(to_scaled(p, s.scale));
  s.normalize();
  return s;
}

enum class EdgeRule { UnitDistance, Cayley, HexPattern, Abstract };

inline std::string edge_rule_name(EdgeRule r) {
  switch (r) {
    case EdgeRule::UnitDistance: return "unit-distance";
    case EdgeRule::Cayley: return "cayley";
    case EdgeRule::HexPattern: return "hex-pattern";
    case EdgeRule::Abstract: return "abstract";
  }
  return "?";
}

enum class VertexClass : char { None = 0, A = 'A', B = 'B' };

/// Metadata attached to a graph at construction.
struct GraphMeta {
  EdgeRule rule = EdgeRule::Abstract;
  std::string detail;
  Rational margin = 0;             // box radius minus two edge extents (box graphs)
  std::vector<int> depth;          // k such that the k-step neighborhood is complete
  std::vector<VertexClass> classes;  // empty unless the graph carries A/B tags
};

/// Finite graph on points of a scaled grid. Adjacency is CSR with sorted
/// neighbor lists; vertices are sorted lexicographically.
class GeometricGraph {
 public:
  GeometricGraph() = default;
  GeometricGraph(ScaledPointSet pts, const std::vector<std::vector<int>>& adjacency, GraphMeta meta)
      : pts_(std::move(pts)), meta_(std::move(meta)) {
    const std::size_t n = pts_.points.size();
    if (adjacency.size() != n) throw std::invalid_argument("adjacency size differs from vertex count");
    if (meta_.depth.empty()) meta_.depth.assign(n, 0);
    if (meta_.depth.size() != n) throw std::invalid_argument("depth size differs from vertex count");
    if (!meta_.classes.empty() && meta_.classes.size() != n)
      throw std::invalid_argument("class tags size differs from vertex count");
    offsets_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<int> row = adjacency[i];
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
      for (int j : row)
        if (j == static_cast<int>(i) || j < 0 || j >= static_cast<int>(n))
          throw std::invalid_argument("bad neighbor index");
      nbrs_.insert(nbrs_.end(), row.begin(), row.end());
      offsets_[i + 1] = nbrs_.size();
    }
    for (std::size_t i = 0; i < n; ++i)
      for (int j : neighbors(static_cast<int>(i)))
        if (!adjacent(j, static_cast<int>(i))) throw std::invalid_argument("adjacency is not symmetric");
    index_ = PointIndex(pts_.points);
  }

  std::size_t size() const { return pts_.points.size(); }
  std::size_t dim() const { return pts_.dim; }
  std::int64_t scale() const { return pts_.scale; }
  const ScaledPointSet& point_set() const { return pts_; }
  const IntVec& point(int i) const { return pts_.points[static_cast<std::size_t>(i)]; }
  RationalVector vertex(int i) const { return RationalVector::from_scaled(point(i), pts_.scale); }
  int find(const IntVec& p) const { return index_.find(p); }
  int find(const RationalVector& p) const {
    if (p.dim() != dim()) return -1;
    Rational t;
    IntVec q(p.dim());
    for (std::size_t i = 0; i < p.dim(); ++i) {
      t = p[i] * pts_.scale;
      if (!is_integer(t)) return -1;
      q[i] = to_int64(t.get_num());
    }
    return index_.find(q);
  }

  std::span<const int> neighbors(int i) const {
    auto b = offsets_[static_cast<std::size_t>(i)], e = offsets_[static_cast<std::size_t>(i) + 1];
    return {nbrs_.data() + b, e - b};
  }
  int degree(int i) const { return static_cast<int>(neighbors(i).size()); }
  bool adjacent(int i, int j) const {
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
  }
  std::size_t edge_count() const { return nbrs_.size() / 2; }
  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < static_cast<int>(size()); ++i)
      for (int j : neighbors(i))
        if (i < j) out.emplace_back(i, j);
    return out;
  }

  int depth(int i) const { return meta_.depth[static_cast<std::size_t>(i)]; }
  bool interior(int i) const { return depth(i) >= 2; }
  std::vector<int> interior_vertices() const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(size()); ++i)
      if (interior(i)) out.push_back(i);
    return out;
  }
  const Rational& margin() const { return meta_.margin; }
  EdgeRule rule() const { return meta_.rule; }
  const std::string& rule_detail() const { return meta_.detail; }
  bool has_classes() const { return !meta_.classes.empty(); }
  VertexClass vertex_class(int i) const {
    return meta_.classes.empty() ? VertexClass::None : meta_.classes[static_cast<std::size_t>(i)];
  }

  /// Subgraph induced on `keep` (any order); vertex i of the result is the
  /// i-th smallest kept vertex. Depth is reset to 0.
  GeometricGraph induced(std::vector<int> keep) const {
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    std::vector<int> remap(size(), -1);
    ScaledPointSet sub{pts_.scale, pts_.dim, {}, std::nullopt};
    for (std::size_t k = 0; k < keep.size(); ++k) {
      remap[static_cast<std::size_t>(keep[k])] = static_cast<int>(k);
      sub.points.push_back(point(keep[k]));
    }
    std::vector<std::vector<int>> adj(keep.size());
    for (std::size_t k = 0; k < keep.size(); ++k)
      for (int j : neighbors(keep[k]))
        if (remap[static_cast<std::size_t>(j)] >= 0) adj[k].push_back(remap[static_cast<std::size_t>(j)]);
    GraphMeta m{meta_.rule, meta_.detail + " (induced)", 0, {}, {}};
    if (has_classes())
      for (int v : keep) m.classes.push_back(vertex_class(v));
    return GeometricGraph(std::move(sub), adj, std::move(m));
  }

 private:
  ScaledPointSet pts_;
  GraphMeta meta_;
  std::vector<std::size_t> offsets_{0};
  std::vector<int> nbrs_;
  PointIndex index_;
};

namespace detail {

/// depth(v) = largest k <= 2 with |v|_inf + k * step <= R.
inline std::vector<int> box_depths(const ScaledPointSet& s, std::int64_t step_extent) {
  std::vector<int> depth(s.points.size(), 0);
  if (!s.box_radius) return depth;
  Rational r = *s.box_radius * s.scale;
  const std::int64_t R = to_int64(floor_of(r));
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    const std::int64_t e = sup_extent(s.points[i]);
    depth[i] = e + 2 * step_extent <= R ? 2 : e + step_extent <= R ? 1 : 0;
  }
  return depth;
}

inline Rational box_margin(const ScaledPointSet& s, std::int64_t step_extent) {
  if (!s.box_radius) return 0;
  return *s.box_radius - make_rational(2 * step_extent, s.scale);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vertex sets

/// Points of (1/2) A_n^# in [-R,R]^{n+1}, on the 1/(2(n+1)) grid: integer y
/// with sum 0 and all coordinates congruent mod n+1.
inline ScaledPointSet half_dual_an_points(int n, const Rational& R) {
  if (n < 1) throw DimensionMismatch("half_dual_an_points needs n >= 1");
  const std::int64_t m = n + 1;
  ScaledPointSet s{2 * m, static_cast<std::size_t>(m), {}, R};
  const std::int64_t k = to_int64(floor_of(R * s.scale));
  IntVec cur(static_cast<std::size_t>(m));
  for (std::int64_t r = 0; r < m; ++r) {
    // Values in [-k, k] congruent to r mod m.
    std::vector<std::int64_t> vals;
    for (std::int64_t v = -k; v <= k; ++v)
      if (((v % m) + m) % m == r) vals.push_back(v);
    if (vals.empty()) continue;
    const std::int64_t lo = vals.front(), hi = vals.back();
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t sum) {
      const std::int64_t rest = m - static_cast<std::int64_t>(i);
      if (rest == 1) {
        const std::int64_t last = -sum;
        if (last >= lo && last <= hi && ((last % m) + m) % m == r) {
          cur[i] = last;
          s.points.push_back(cur);
        }
        return;
      }
      for (std::int64_t v : vals) {
        const std::int64_t need = -sum - v;
        if (need < lo * (rest - 1) || need > hi * (rest - 1)) continue;
        cur[i] = v;
        rec(i + 1, sum + v);
      }
    };
    rec(0, 0);
  }
  s.normalize();
  return s;
}

/// Points of (1/2) D_n^# in [-R,R]^n on the 1/4 grid: all coordinates even
/// or all odd.
inline ScaledPointSet half_dual_dn_points(int n, const Rational& R) {
  if (n < 1) throw DimensionMismatch("half_dual_dn_points needs n >= 1");
  ScaledPointSet s{4, static_cast<std::size_t>(n), {}, R};
  const std::int64_t k = to_int64(floor_of(R * 4));
  IntVec cur(static_cast<std::size_t>(n));
  for (std::int64_t parity : {0, 1}) {
    std::vector<std::int64_t> vals;
    for (std::int64_t v = -k; v <= k; ++v)
      if (((v % 2) + 2) % 2 == parity) vals.push_back(v);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == cur.size()) {
        s.points.push_back(cur);
        return;
      }
      for (auto v : vals) {
        cur[i] = v;
        rec(i + 1);
      }
    };
    if (!vals.empty()) rec(0);
  }
  s.normalize();
  return s;
}

/// {0,1}^n on the integer grid.
inline ScaledPointSet cube_points(int n) {
  if (n < 1 || n > 20) throw DimensionMismatch("cube_points needs 1 <= n <= 20");
  ScaledPointSet s{1, static_cast<std::size_t>(n), {}, std::nullopt};
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    IntVec p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::int64_t>((mask >> i) & 1UL);
    s.points.push_back(std::move(p));
  }
  s.normalize();
  return s;
}

/// Points of the lattice generated by `generators` reachable from 0 in at
/// most `radius` generator steps, with their word lengths.
inline std::pair<ScaledPointSet, std::vector<int>> cayley_ball_points(const std::vector<RationalVector>& generators,
                                                                      int radius) {
  if (generators.empty()) throw std::invalid_argument("empty generator set");
  ScaledPointSet s;
  s.scale = grid_scale(generators);
  s.dim = generators[0].dim();
  std::vector<IntVec> gens;
  for (const auto& g : generators) gens.push_back(to_scaled(g, s.scale));
  std::unordered_map<IntVec, int, IntVecHash> word;
  std::vector<IntVec> frontier = {IntVec(s.dim, 0)};
  word.emplace(frontier[0], 0);
  for (int r = 1; r <= radius; ++r) {
    std::vector<IntVec> next;
    for (const auto& p : frontier)
      for (const auto& g : gens) {
        IntVec q = p + g;
        if (word.emplace(q, r).second) next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  for (const auto& [p, w] : word) s.points.push_back(p);
  s.normalize();
  std::vector<int> len;
  for (const auto& p : s.points) len.push_back(word.at(p));
  return {std::move(s), std::move(len)};
}

// ---------------------------------------------------------------------------
// Builders

struct BuildOptions {
  int threads = 1;
  bool bucketed = false;
  /// Largest |x|_inf over the unit sphere of the gauge, on the point grid's
  /// scale. Needed for bucketing and for depth flags; 0 = unknown.
  Rational unit_extent = 0;
};

/// Largest sup-norm of a point on the unit sphere: attained at a vertex.
inline Rational unit_ball_extent(const std::vector<RationalVector>& polytope_vertices) {
  Rational m = 0;
  for (const auto& v : polytope_vertices) m = std::max(m, sup_extent(v));
  return m;
}

/// Induced unit-distance graph: i ~ j iff gauge(p_i - p_j) = 1 exactly.
inline GeometricGraph build_unit_distance_graph(ScaledPointSet pts, const GaugeNorm& gauge,
                                                const BuildOptions& opt = {}) {
  if (pts.dim != gauge.dim()) throw DimensionMismatch("point set and gauge dimensions differ");
  const ScaledGauge sg(gauge, pts.scale);
  const std::size_t n = pts.points.size();
  std::vector<std::vector<int>> adj(n);
  const auto& P = pts.points;
  std::int64_t step = 0;
  if (opt.unit_extent > 0) step = to_int64(ceil_of(opt.unit_extent * pts.scale));

  if (opt.bucketed) {
    if (step <= 0) throw std::invalid_argument("bucketed construction needs unit_extent");
    // Buckets of side `step`: unit-distance partners lie in adjacent buckets.
    auto cell_of = [&](const IntVec& p) {
      IntVec c(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) c[i] = p[i] >= 0 ? p[i] / step : -((-p[i] + step - 1) / step);
      return c;
    };
    std::unordered_map<IntVec, std::vector<int>, IntVecHash> buckets;
    for (std::size_t i = 0; i < n; ++i) buckets[cell_of(P[i])].push_back(static_cast<int>(i));
    std::vector<IntVec> offsets;
    detail::enumerate_int_box(pts.dim, 1, [](long) { return true; }, [&](const std::vector<long>& o) {
      offsets.emplace_back(o.begin(), o.end());
    });
    // In high dimension there are fewer occupied buckets than offsets.
    const bool scan_buckets = offsets.size() > buckets.size();
    auto near = [](const IntVec& a, const IntVec& b) {
      for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] - b[k] > 1 || b[k] - a[k] > 1) return false;
      return true;
    };
    parallel_for(n, opt.threads, [&](std::size_t i) {
      const IntVec c = cell_of(P[i]);
      auto visit = [&](const std::vector<int>& ids) {
        for (int j : ids)
          if (j != static_cast<int>(i) && sg.is_unit_diff(P[i], P[static_cast<std::size_t>(j)])) adj[i].push_back(j);
      };
      if (scan_buckets) {
        for (const auto& [cell, ids] : buckets)
          if (near(cell, c)) visit(ids);
        return;
      }
      for (const auto& o : offsets) {
        auto it = buckets.find(c + o);
        if (it != buckets.end()) visit(it->second);
      }
    });
  } else {
    parallel_for(n, opt.threads, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && sg.is_unit_diff(P[i], P[j])) adj[i].push_back(static_cast<int>(j));
    });
  }
  GraphMeta meta{EdgeRule::UnitDistance, gauge.name(), detail::box_margin(pts, step), detail::box_depths(pts, step), {}};
  if (step == 0) meta.depth.assign(n, 0);
  return GeometricGraph(std::move(pts), adj, std::move(meta));
}

/// Cayley graph restricted to a point set: i ~ j iff p_j - p_i is a
/// generator. Generators must be closed under negation.
inline GeometricGraph build_cayley_graph(ScaledPointSet pts, const std::vector<RationalVector>& generators,
                                         const BuildOptions& opt = {}) {
  std::vector<IntVec> gens;
  std::int64_t step = 0;
  for (const auto& g : generators) {
    gens.push_back(to_scaled(g, pts.scale));
    step = std::max(step, sup_extent(gens.back()));
  }
  {
    std::unordered_set<IntVec, IntVecHash> gs(gens.begin(), gens.end());
    for (const auto& g : gens) {
      if (!gs.count(negated(g))) throw std::invalid_argument("Cayley generators are not closed under negation");
      if (sup_extent(g) == 0) throw std::invalid_argument("zero generator");
    }
  }
  const PointIndex index(pts.points);
  std::vector<std::vector<int>> adj(pts.points.size());
  parallel_for(pts.points.size(), opt.threads, [&](std::size_t i) {
    for (const auto& g : gens) {
      int j = index.find(pts.points[i] + g);
      if (j >= 0) adj[i].push_back(j);
    }
  });
  GraphMeta meta{EdgeRule::Cayley, std::to_string(gens.size()) + " generators", detail::box_margin(pts, step),
                 detail::box_depths(pts, step), {}};
  return GeometricGraph(std::move(pts), adj, std::move(meta));
}

/// Cayley graph on the word ball of the given radius; depth(v) = radius -
/// word length, so the origin's `radius`-step neighborhood is complete.
inline GeometricGraph build_cayley_ball(const std::vector<RationalVector>& generators, int radius) {
  auto [pts, len] = cayley_ball_points(generators, radius);
  const std::size_t n = pts.points.size();
  ScaledPointSet copy = pts;
  auto g = build_cayley_graph(std::move(copy), generators);
  std::vector<std::vector<int>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto nb = g.neighbors(static_cast<int>(i));
    adj[i].assign(nb.begin(), nb.end());
  }
  GraphMeta meta{EdgeRule::Cayley, g.rule_detail() + ", word ball " + std::to_string(radius), 0, {}, {}};
  for (int w : len) meta.depth.push_back(std::min(2, radius - w));
  return GeometricGraph(std::move(pts), adj, std::move(meta));
}

/// The hexagon pattern graph on (A u B) in [-R,R]^d, A = L/2, B = V_P + L/2,
/// with edges (a, a + s_i) and (a + s_i, a + s_{i+1}) for a in A.
inline GeometricGraph build_hex_pattern_graph(const HexagonPattern& h, const Rational& R) {
  std::vector<RationalVector> grid_pts = {h.a_generators[0], h.a_generators[1], h.v[0], h.v[1]};
  for (const auto& s : h.s) grid_pts.push_back(s);
  const std::int64_t scale = grid_scale(grid_pts);
  Rational ext = 0;
  for (const auto& v : h.v) ext = std::max(ext, sup_extent(v));

  const auto half_L = h.lattice().scaled(Rational(1, 2));
  std::vector<IntVec> a_ext;
  for (const auto& p : enumerate_in_box(half_L, R + ext)) a_ext.push_back(to_scaled(p, scale));
  const std::int64_t Rs = to_int64(floor_of(R * scale));
  auto in_box = [&](const IntVec& p) { return sup_extent(p) <= Rs; };

  ScaledPointSet pts{scale, h.basis.ambient_dim(), {}, R};
  std::unordered_set<IntVec, IntVecHash> a_set;
  const IntVec off0 = to_scaled(h.v[0], scale), off1 = to_scaled(h.v[1], scale);
  for (const auto& a : a_ext) {
    if (in_box(a)) {
      pts.points.push_back(a);
      a_set.insert(a);
    }
    for (const auto* off : {&off0, &off1}) {
      IntVec b = a + *off;
      if (in_box(b)) pts.points.push_back(std::move(b));
    }
  }
  pts.normalize();
  const PointIndex index(pts.points);
  std::array<IntVec, 6> s;
  std::int64_t step = 0;
  for (int i = 0; i < 6; ++i) s[static_cast<std::size_t>(i)] = to_scaled(h.interior(i), scale);
  for (int i = 0; i < 6; ++i) {
    step = std::max(step, sup_extent(s[static_cast<std::size_t>(i)]));
    step = std::max(step, sup_extent(s[static_cast<std::size_t>((i + 1) % 6)] - s[static_cast<std::size_t>(i)]));
  }
  std::vector<std::vector<int>> adj(pts.points.size());
  auto link = [&](const IntVec& p, const IntVec& q) {
    int i = index.find(p), j = index.find(q);
    if (i < 0 || j < 0) return;
    adj[static_cast<std::size_t>(i)].push_back(j);
    adj[static_cast<std::size_t>(j)].push_back(i);
  };
  for (const auto& a : a_ext)
    for (std::size_t i = 0; i < 6; ++i) {
      link(a, a + s[i]);
      link(a + s[i], a + s[(i + 1) % 6]);
    }
  GraphMeta meta{EdgeRule::HexPattern, "hexagon pattern", detail::box_margin(pts, step), detail::box_depths(pts, step), {}};
  for (const auto& p : pts.points) meta.classes.push_back(a_set.count(p) ? VertexClass::A : VertexClass::B);
  return GeometricGraph(std::move(pts), adj, std::move(meta));
}

/// A graph given by explicit 1-D positions and an edge predicate.
template <typename Pred>
GeometricGraph build_line_graph(const std::vector<std::int64_t>& positions, Pred&& edge, std::string detail) {
  ScaledPointSet pts{1, 1, {}, std::nullopt};
  for (auto x : positions) pts.points.push_back({x});
  pts.normalize();
  std::vector<std::vector<int>> adj(pts.points.size());
  for (std::size_t i = 0; i < pts.points.size(); ++i)
    for (std::size_t j = 0; j < pts.points.size(); ++j)
      if (i != j && edge(pts.points[i][0], pts.points[j][0])) adj[i].push_back(static_cast<int>(j));
  return GeometricGraph(std::move(pts), adj, GraphMeta{EdgeRule::Abstract, std::move(detail), 0, {}, {}});
}

// ---------------------------------------------------------------------------
// Export

/// Plain-text edge list:
///   # comment lines
///   v <index> <x_1>,...,<x_d>        (one per vertex, fractions p/q)
///   e <i> <j>                        (one per edge, i < j)
inline void write_edge_list(std::ostream& os, const GeometricGraph& g) {
  os << "# rule " << edge_rule_name(g.rule()) << " (" << g.rule_detail() << ")\n";
  os << "# vertices " << g.size() << " edges " << g.edge_count() << "\n";
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    os << "v " << i << ' ';
    auto v = g.vertex(i);
    for (std::size_t k = 0; k < v.dim(); ++k) os << (k ? "," : "") << to_fraction_string(v[k]);
    if (g.has_classes()) os << ' ' << static_cast<char>(g.vertex_class(i));
    os << '\n';
  }
  for (auto [i, j] : g.edges()) os << "e " << i << ' ' << j << '\n';
}

}  // namespace parallelo
