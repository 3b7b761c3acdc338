#include <random>
#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "parallelo/graph.hpp"
#include "parallelo/polytope.hpp"
#include "parallelo/property_d.hpp"

namespace parallelo {
namespace {

RationalVector V(std::initializer_list<long> xs) { return RationalVector::from_ints(xs); }

GeometricGraph abstract_graph(int n, const std::vector<std::pair<int, int>>& edges, int depth) {
  ScaledPointSet pts{1, 1, {}, std::nullopt};
  for (int i = 0; i < n; ++i) pts.points.push_back({i});
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }
  GraphMeta m;
  m.depth.assign(static_cast<std::size_t>(n), depth);
  return GeometricGraph(std::move(pts), adj, std::move(m));
}

std::set<std::pair<IntVec, IntVec>> edge_points(const GeometricGraph& g) {
  std::set<std::pair<IntVec, IntVec>> out;
  for (auto [i, j] : g.edges()) out.emplace(g.point(i), g.point(j));
  return out;
}

TEST(UnitDistanceGraphTest, CubeVerticesFormCompleteGraph) {
  for (int n = 1; n <= 6; ++n) {
    auto g = build_unit_distance_graph(cube_points(n), gauge_sup(n));
    const std::size_t m = std::size_t{1} << n;
    ASSERT_EQ(g.size(), m);
    EXPECT_EQ(g.edge_count(), m * (m - 1) / 2);
  }
}

TEST(UnitDistanceGraphTest, PointsAtHalfGaugeHaveNoEdge) {
  auto pts = make_point_set({V({0, 0}), RationalVector{Rational(1, 2), Rational(0)}});
  EXPECT_EQ(build_unit_distance_graph(pts, gauge_sup(2)).edge_count(), 0u);
}

TEST(UnitDistanceGraphTest, BucketedMatchesNaive) {
  {
    auto p = polytope_an(2);
    BuildOptions o{1, true, unit_ball_extent(p.vertices)};
    auto naive = build_unit_distance_graph(half_dual_an_points(2, 2), p.gauge);
    auto fast = build_unit_distance_graph(half_dual_an_points(2, 2), p.gauge, o);
    EXPECT_EQ(edge_points(naive), edge_points(fast));
    EXPECT_GT(naive.edge_count(), 0u);
  }
  {
    auto p = polytope_dn(4);
    BuildOptions o{3, true, unit_ball_extent(p.vertices)};
    auto naive = build_unit_distance_graph(half_dual_dn_points(4, 1), p.gauge);
    auto fast = build_unit_distance_graph(half_dual_dn_points(4, 1), p.gauge, o);
    EXPECT_EQ(edge_points(naive), edge_points(fast));
  }
  {
    auto h = hexagon_pattern(reduce_planar_basis(V({3, 0}), V({1, 3})));
    auto hg = build_hex_pattern_graph(h, 4);
    auto g = gauge_planar(h.basis);
    BuildOptions o{2, true, unit_ball_extent(std::vector<RationalVector>(h.v.begin(), h.v.end()))};
    EXPECT_EQ(edge_points(build_unit_distance_graph(hg.point_set(), g)),
              edge_points(build_unit_distance_graph(hg.point_set(), g, o)));
  }
}

TEST(UnitDistanceGraphTest, ThreadCountDoesNotChangeEdges) {
  auto p = polytope_an(3);
  auto one = build_unit_distance_graph(half_dual_an_points(3, 1), p.gauge, {1, false, 0});
  auto many = build_unit_distance_graph(half_dual_an_points(3, 1), p.gauge, {4, false, 0});
  EXPECT_EQ(one.edges(), many.edges());
}

TEST(VertexSetTest, HalfDualAnMatchesGeneratorSpan) {
  // Same points as sums of projected unit vectors / 2 within the box.
  auto pts = half_dual_an_points(2, 1);
  auto gens = LatticeSpec::an(2).dual_generators();
  std::set<IntVec> expect;
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      auto p = Rational(a, 2) * gens[0] + Rational(b, 2) * gens[1];
      if (sup_extent(p) <= 1) expect.insert(to_scaled(p, 6));
    }
  EXPECT_EQ(std::set<IntVec>(pts.points.begin(), pts.points.end()), expect);
}

TEST(VertexSetTest, HalfDualDnContainsAllGenerators) {
  auto pts = half_dual_dn_points(4, 1);
  PointIndex idx(pts.points);
  for (const auto& g : polytope_dn(4).generators_half_dual) EXPECT_GE(idx.find(to_scaled(g, 4)), 0);
  for (const auto& v : vertices_dn(4)) EXPECT_GE(idx.find(to_scaled(Rational(1, 2) * v, 4)), 0);
}

TEST(CayleyGraphTest, InteriorDegreeEqualsGeneratorCount) {
  auto an = polytope_an(2);
  std::vector<RationalVector> half_v;
  for (const auto& v : an.vertices) half_v.push_back(Rational(1, 2) * v);
  auto g = build_cayley_graph(half_dual_an_points(2, 3), half_v);
  ASSERT_FALSE(g.interior_vertices().empty());
  for (int i : g.interior_vertices()) EXPECT_EQ(g.degree(i), 6);

  auto dn = polytope_dn(4);
  std::vector<RationalVector> half_d;
  for (const auto& v : dn.vertices) half_d.push_back(Rational(1, 2) * v);
  auto gd = build_cayley_graph(half_dual_dn_points(4, Rational(3, 2)), half_d);
  ASSERT_FALSE(gd.interior_vertices().empty());
  for (int i : gd.interior_vertices()) EXPECT_EQ(gd.degree(i), 24);
}

TEST(CayleyGraphTest, SingleVertexHasNoEdges) {
  auto pts = make_point_set({V({0, 0})});
  auto g = build_cayley_graph(pts, {V({1, 0}), V({-1, 0})});
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(CayleyGraphTest, RejectsAsymmetricGenerators) {
  EXPECT_THROW(build_cayley_graph(make_point_set({V({0, 0})}), {V({1, 0})}), std::invalid_argument);
}

TEST(CayleyGraphTest, PropertyMarginSoundness) {
  // Every interior vertex has all one- and two-step sums inside the vertex set.
  auto an = polytope_an(3);
  std::vector<RationalVector> gens;
  for (const auto& v : an.vertices) gens.push_back(Rational(1, 2) * v);
  auto g = build_cayley_graph(half_dual_an_points(3, Rational(3, 2)), gens);
  std::vector<IntVec> sg;
  for (const auto& v : gens) sg.push_back(to_scaled(v, g.scale()));
  ASSERT_FALSE(g.interior_vertices().empty());
  for (int i : g.interior_vertices())
    for (const auto& a : sg)
      for (const auto& b : sg) {
        EXPECT_GE(g.find(g.point(i) + a), 0);
        EXPECT_GE(g.find(g.point(i) + a + b), 0);
      }
}

TEST(CayleyGraphTest, PropertyTranslationInvariance) {
  auto dn = polytope_dn(4);
  std::vector<RationalVector> gens;
  for (const auto& v : dn.vertices) gens.push_back(Rational(1, 2) * v);
  auto g = build_cayley_graph(half_dual_dn_points(4, Rational(3, 2)), gens);
  std::mt19937_64 rng(5);
  auto interior = g.interior_vertices();
  const IntVec shifts[] = {{4, 4, 0, 0}, {2, 2, 2, 2}, {-4, 0, 0, 4}};
  for (const auto& t : shifts) {
    for (int trial = 0; trial < 200; ++trial) {
      int u = interior[rng() % interior.size()], w = interior[rng() % interior.size()];
      int u2 = g.find(g.point(u) + t), w2 = g.find(g.point(w) + t);
      if (u2 < 0 || w2 < 0) continue;
      EXPECT_EQ(g.adjacent(u, w), g.adjacent(u2, w2));
    }
  }
}

TEST(CayleyBallTest, DepthMarksCompleteNeighborhoods) {
  auto an = polytope_an(2);
  std::vector<RationalVector> gens;
  for (const auto& v : an.vertices) gens.push_back(Rational(1, 2) * v);
  auto g = build_cayley_ball(gens, 2);
  EXPECT_EQ(g.size(), 19u);  // hexagonal ball of radius 2
  int origin = g.find(IntVec(3, 0));
  ASSERT_GE(origin, 0);
  EXPECT_EQ(g.depth(origin), 2);
  for (int j : g.neighbors(origin)) {
    EXPECT_EQ(g.depth(j), 1);
    EXPECT_EQ(g.degree(j), 6);
  }
}

class HexPatternTest : public ::testing::Test {
 protected:
  HexagonPattern h = hexagon_pattern(reduce_planar_basis(V({3, 0}), V({1, 3})));
  GeometricGraph g = build_hex_pattern_graph(h, 6);
};

TEST_F(HexPatternTest, InteriorDegreesAndClasses) {
  ASSERT_FALSE(g.interior_vertices().empty());
  for (int i : g.interior_vertices()) {
    EXPECT_EQ(g.degree(i), 6) << g.vertex(i);
    int in_a = 0;
    for (int j : g.neighbors(i)) in_a += g.vertex_class(j) == VertexClass::A;
    if (g.vertex_class(i) == VertexClass::A) {
      EXPECT_EQ(in_a, 0);
    } else {
      EXPECT_EQ(in_a, 3);
    }
  }
}

TEST_F(HexPatternTest, ClassesMatchCosets) {
  auto L = h.lattice();
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    auto x = g.vertex(i);
    bool in_a = L.contains(Rational(2) * x);
    bool in_b = L.contains(Rational(2) * (x - h.v[0])) || L.contains(Rational(2) * (x - h.v[1]));
    EXPECT_NE(in_a, in_b) << x;
    EXPECT_EQ(g.vertex_class(i), in_a ? VertexClass::A : VertexClass::B);
  }
}

TEST_F(HexPatternTest, NeighborsOfBVertex) {
  RationalVector zero(2);
  for (int i = 0; i < 6; ++i) {
    int b = g.find(h.interior(i));
    ASSERT_GE(b, 0);
    std::set<RationalVector> got;
    for (int j : g.neighbors(b)) got.insert(g.vertex(j));
    std::set<RationalVector> expect = {zero,
                                       Rational(1, 2) * h.basis.beta(i),
                                       Rational(1, 2) * h.basis.beta(i - 1),
                                       h.interior(i - 1),
                                       h.interior(i + 1),
                                       h.vertex(i)};
    EXPECT_EQ(got, expect) << "i=" << i;
  }
}

TEST(HexPatternRegularTest, SameGraphAsCayleyGraph) {
  auto h = hexagon_pattern(regular_hexagon_basis());
  auto pattern = build_hex_pattern_graph(h, 2);
  auto an = polytope_an(2);
  std::vector<RationalVector> gens;
  for (const auto& v : an.vertices) gens.push_back(Rational(1, 2) * v);
  auto cayley = build_cayley_graph(half_dual_an_points(2, 2), gens);
  ASSERT_EQ(pattern.size(), cayley.size());
  std::set<std::pair<RationalVector, RationalVector>> e1, e2;
  for (auto [i, j] : pattern.edges()) e1.emplace(pattern.vertex(i), pattern.vertex(j));
  for (auto [i, j] : cayley.edges()) e2.emplace(cayley.vertex(i), cayley.vertex(j));
  EXPECT_EQ(e1, e2);
}

TEST(DistanceTwoPairsTest, SmallGraphs) {
  auto path = abstract_graph(3, {{0, 1}, {1, 2}}, 2);
  auto pairs = graph_distance_2_pairs(path);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].u, 0);
  EXPECT_EQ(pairs[0].w, 2);
  EXPECT_EQ(pairs[0].common, std::vector<int>{1});
  EXPECT_TRUE(graph_distance_2_pairs(abstract_graph(3, {{0, 1}, {1, 2}, {0, 2}}, 2)).empty());
  // Non-interior vertices are never the source of a pair.
  EXPECT_TRUE(graph_distance_2_pairs(abstract_graph(3, {{0, 1}, {1, 2}}, 1)).empty());
  // C4: two pairs, each with two common neighbors.
  auto c4 = graph_distance_2_pairs(abstract_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, 2));
  ASSERT_EQ(c4.size(), 2u);
  EXPECT_EQ(c4[0].common, (std::vector<int>{1, 3}));
}

std::vector<RationalVector> half_vertices(const PolytopeData& p) {
  std::vector<RationalVector> out;
  for (const auto& v : p.vertices) out.push_back(Rational(1, 2) * v);
  return out;
}

TEST(PropertyDTest, StrongHoldsForAnCayleyGraphs) {
  for (int n = 2; n <= 3; ++n) {
    auto p = polytope_an(n);
    auto g = build_cayley_graph(half_dual_an_points(n, Rational(3, 2)), half_vertices(p));
    auto rep = check_property_d(g, p.gauge, PropertyDMode::Strong);
    EXPECT_GT(rep.checked_pairs, 0u);
    EXPECT_TRUE(rep.holds()) << "n=" << n;
  }
}

TEST(PropertyDTest, StrongHoldsForD4CayleyGraph) {
  auto p = polytope_dn(4);
  auto g = build_cayley_graph(half_dual_dn_points(4, 1), half_vertices(p));
  auto rep = check_property_d(g, p.gauge, PropertyDMode::Strong);
  EXPECT_GT(rep.checked_pairs, 0u);
  EXPECT_TRUE(rep.holds());
}

TEST(PropertyDTest, HexagonStrongFailsWeakHolds) {
  for (const auto& [b0, b1] : std::vector<std::pair<RationalVector, RationalVector>>{
           {V({3, 0}), V({1, 3})}, {V({5, 0}), V({2, 4})}, {V({4, 1}), V({1, 5})}}) {
    auto h = hexagon_pattern(reduce_planar_basis(b0, b1));
    auto g = build_hex_pattern_graph(h, 8);
    auto gauge = gauge_planar(h.basis);
    auto strong = check_property_d(g, gauge, PropertyDMode::Strong);
    EXPECT_FALSE(strong.holds());
    // Some s_i and s_{i+3} are at graph distance 2 through their common
    // neighbor 0 but not at gauge distance 1.
    bool found = false;
    for (int i = 0; i < 3; ++i) {
      int a = g.find(h.interior(i)), b = g.find(h.interior(i + 3));
      ASSERT_GE(a, 0);
      ASSERT_GE(b, 0);
      found = found || std::any_of(strong.violations.begin(), strong.violations.end(), [&](const PropertyDViolation& v) {
                return std::min(v.u, v.w) == std::min(a, b) && std::max(v.u, v.w) == std::max(a, b);
              });
    }
    EXPECT_TRUE(found);
    auto weak = check_property_d(g, gauge, PropertyDMode::Weak);
    EXPECT_GT(weak.checked_pairs, 0u);
    EXPECT_TRUE(weak.holds());
  }
}

TEST(PropertyDTest, WeakModeNeedsClassTags) {
  auto g = abstract_graph(3, {{0, 1}, {1, 2}}, 2);
  EXPECT_THROW(check_property_d(g, gauge_sup(1), PropertyDMode::Weak), std::invalid_argument);
}

TEST(EdgeListTest, Format) {
  auto g = build_unit_distance_graph(cube_points(1), gauge_sup(1));
  std::ostringstream os;
  write_edge_list(os, g);
  EXPECT_EQ(os.str(), "# rule unit-distance (sup1)\n# vertices 2 edges 1\nv 0 0/1\nv 1 1/1\ne 0 1\n");
}

}  // namespace
}  // namespace parallelo
