#include <numeric>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "parallelo/density.hpp"

namespace parallelo {
namespace {

RationalVector V(std::initializer_list<long> xs) { return RationalVector::from_ints(xs); }

GeometricGraph a2_box_graph(const Rational& R) {
  std::vector<RationalVector> gens;
  for (const auto& v : vertices_an(2)) gens.push_back(Rational(1, 2) * v);
  return build_cayley_graph(half_dual_an_points(2, R), gens);
}

TEST(ClosedNeighborhoodTest, RegularHexagonCounts) {
  auto g = a2_box_graph(2);
  int o = g.find(IntVec(3, 0));
  EXPECT_EQ(closed_neighborhood(g, {o}).size(), 7u);
  EXPECT_TRUE(closed_neighborhood(g, {}).empty());
  ChainClique c{2, {1}};
  std::vector<int> C;
  for (const auto& p : c.points()) C.push_back(g.find(p));
  EXPECT_EQ(closed_neighborhood(g, C).size(), 10u);
}

TEST(ClosedNeighborhoodTest, BoundaryVertexThrows) {
  auto g = a2_box_graph(1);
  int corner = static_cast<int>(g.size()) - 1;
  ASSERT_EQ(g.depth(corner), 0);
  EXPECT_THROW(closed_neighborhood(g, {corner}), MarginViolation);
}

TEST(ChainCliqueTest, EnumerationCounts) {
  auto two = enumerate_chain_cliques(2);
  ASSERT_EQ(two.size(), 4u);
  EXPECT_TRUE(two[0].weights.empty());
  EXPECT_EQ(two[3].weights, (std::vector<int>{1, 2}));
  EXPECT_EQ(enumerate_chain_cliques(3).size(), 8u);
  EXPECT_EQ(enumerate_chain_cliques(6).size(), 64u);
  EXPECT_THROW(enumerate_chain_cliques(1), DimensionMismatch);
}

TEST(ChainCliqueTest, FormulaExamples) {
  EXPECT_EQ(an_neighborhood_size_formula(2, {1, 2}), 12);
  EXPECT_EQ(an_neighborhood_size_formula(2, {1}), 10);
  EXPECT_EQ(an_neighborhood_size_formula(2, {}), 7);
  EXPECT_EQ(an_neighborhood_size_formula(3, {1, 2, 3}), 32);
  EXPECT_THROW(an_neighborhood_size_formula(3, {2, 2}), std::invalid_argument);
}

TEST(ChainCliqueTest, PropertyFormulaMatchesBruteForce) {
  for (int n = 2; n <= 5; ++n) {
    auto g = an_density_graph(n);
    for (const auto& c : enumerate_chain_cliques(n)) {
      std::vector<int> C;
      for (const auto& p : c.points()) C.push_back(g.find(p));
      EXPECT_EQ(static_cast<long>(closed_neighborhood(g, C).size()), an_neighborhood_size_formula(n, c.weights))
          << "n=" << n << " " << c.name();
    }
  }
}

TEST(ChainCliqueTest, PropertyDensityInvariantUnderCoordinatePermutation) {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    auto g = an_density_graph(n);
    for (const auto& c : enumerate_chain_cliques(n)) {
      std::vector<std::size_t> perm(static_cast<std::size_t>(n) + 1);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<int> C, D;
      for (const auto& p : c.points()) {
        RationalVector q(p.dim());
        for (std::size_t i = 0; i < p.dim(); ++i) q[perm[i]] = p[i];
        C.push_back(g.find(p));
        D.push_back(g.find(q));
      }
      ASSERT_EQ(std::count(D.begin(), D.end(), -1), 0);
      EXPECT_EQ(closed_neighborhood(g, C).size(), closed_neighborhood(g, D).size());
    }
  }
}

TEST(ChainCliqueTest, WordBallAgreesWithBox) {
  // The word-ball region and a box region give the same neighborhoods.
  auto ball = an_density_graph(2);
  auto box = a2_box_graph(2);
  for (const auto& c : enumerate_chain_cliques(2)) {
    std::vector<int> C1, C2;
    for (const auto& p : c.points()) {
      C1.push_back(ball.find(p));
      C2.push_back(box.find(p));
    }
    EXPECT_EQ(closed_neighborhood(ball, C1).size(), closed_neighborhood(box, C2).size());
  }
}

TEST(VerifyAnBoundTest, SmallDimensions) {
  auto c2 = verify_an_bound(2);
  EXPECT_EQ(c2.max_density, Rational(1, 4));
  std::set<Rational> values;
  for (const auto& e : c2.entries) values.insert(e.density);
  EXPECT_EQ(values, (std::set<Rational>{Rational(1, 7), Rational(1, 5), Rational(1, 4)}));
  auto c4 = verify_an_bound(4);
  EXPECT_EQ(c4.max_density, Rational(1, 16));
  EXPECT_EQ(c4.maximizers, std::vector<std::string>{"chain{1,2,3,4}"});
  EXPECT_TRUE(c4.bound_matches_paper());
  for (const auto& e : c4.entries) EXPECT_TRUE(e.cross_checked);
}

TEST(VerifyAnBoundTest, FormulaOnlyAboveCap) {
  auto c = verify_an_bound(8, 6);
  EXPECT_EQ(c.max_density, Rational(1, 256));
  EXPECT_EQ(c.entries.size(), 256u);
  EXPECT_FALSE(c.entries[0].cross_checked);
}

TEST(VerifyDnBoundTest, D4Values) {
  auto c = verify_dn_bound(4);
  ASSERT_EQ(c.entries.size(), 8u);
  std::map<std::string, Rational> d;
  for (const auto& e : c.entries) d[e.structure] = e.density;
  EXPECT_EQ(d["{0,v1/2,v2/2,v3/2}"], Rational(1, 15));
  EXPECT_EQ(d["{0,v2/2}"], Rational(1, 20));
  EXPECT_EQ(d["{0,v3/2}"], Rational(1, 20));
  EXPECT_EQ(d["{0,v1/2}"], Rational(1, 20));
  EXPECT_EQ(d["{0,v1/2,v2/2}"], Rational(1, 17));
  EXPECT_EQ(d["{0,v2/2,v3/2}"], Rational(1, 17));
  // The singleton: 1 + |V_P| = 1 + 2^n + 2n neighbors.
  EXPECT_EQ(d["{0}"], Rational(1, 25));
  EXPECT_EQ(c.max_density, Rational(1, 15));
  EXPECT_TRUE(c.bound_matches_paper());
  EXPECT_FALSE(c.entries_match_paper());
  EXPECT_EQ(c.notes.size(), 1u);
}

TEST(VerifyDnBoundTest, BoxRegionAgreesWithWordBall) {
  std::vector<RationalVector> gens;
  for (const auto& v : vertices_dn(4)) gens.push_back(Rational(1, 2) * v);
  auto box = build_cayley_graph(half_dual_dn_points(4, Rational(3, 2)), gens);
  auto ball = dn_density_graph(4);
  for (unsigned mask = 0; mask < 8; ++mask) {
    DnClique cl{4, mask};
    std::vector<int> C1, C2;
    for (const auto& p : cl.points()) {
      C1.push_back(box.find(p));
      C2.push_back(ball.find(p));
    }
    EXPECT_EQ(closed_neighborhood(box, C1).size(), closed_neighborhood(ball, C2).size()) << cl.name();
  }
}

TEST(VerifyDnBoundTest, MaximumMatchesClosedFormForSeveralN) {
  for (int n = 5; n <= 6; ++n) {
    auto c = verify_dn_bound(n);
    EXPECT_EQ(c.max_density, 1 / (Rational(3, 4) * (1 << n) + n - 1));
    EXPECT_EQ(c.maximizers, std::vector<std::string>{"{0,v1/2,v2/2,v3/2}"});
  }
}

TEST(VerifyHexagonBoundTest, ComponentDensities) {
  for (const auto& [b0, b1] : std::vector<std::pair<RationalVector, RationalVector>>{
           {V({3, 0}), V({1, 3})}, {V({5, 0}), V({2, 4})}, {V({4, 1}), V({1, 5})}}) {
    auto c = verify_hexagon_bound(hexagon_pattern(reduce_planar_basis(b0, b1)));
    ASSERT_EQ(c.entries.size(), 6u);
    std::set<Rational> values;
    for (const auto& e : c.entries) {
      values.insert(e.density);
      EXPECT_TRUE(e.matches_paper()) << e.structure;
    }
    EXPECT_EQ(values, (std::set<Rational>{Rational(1, 6), Rational(1, 4), Rational(2, 7), Rational(1, 3),
                                          Rational(3, 8)}));
    EXPECT_EQ(c.assembled_bound, Rational(1, 4));
  }
}

TEST(DecomposeTest, SingletonAndOverlapDetection) {
  auto h = hexagon_pattern(reduce_planar_basis(V({3, 0}), V({1, 3})));
  auto g = build_hex_pattern_graph(h, 6);
  auto gauge = gauge_planar(h.basis);
  int o = g.find(RationalVector(2));
  auto one = decompose_avoiding_set(g, gauge, {o});
  EXPECT_EQ(one.components.size(), 1u);
  EXPECT_TRUE(one.disjoint());
  // s_0 and s_3 avoid each other but share the neighbor 0.
  int s0 = g.find(h.interior(0)), s3 = g.find(h.interior(3));
  auto rep = decompose_avoiding_set(g, gauge, {s0, s3});
  EXPECT_EQ(rep.components.size(), 2u);
  EXPECT_FALSE(rep.disjoint());
}

TEST(DecomposeTest, NotAvoidingThrows) {
  auto p = polytope_an(2);
  auto g = a2_box_graph(2);
  // Two Cayley steps in different directions land at gauge 1.
  auto half = vertices_an(2);
  int a = g.find(IntVec(3, 0));
  int b = g.find(Rational(1, 2) * half[0] + Rational(1, 2) * half[1]);
  ASSERT_GE(b, 0);
  ASSERT_EQ(p.gauge(g.vertex(b)), 1);
  EXPECT_THROW(decompose_avoiding_set(g, p.gauge, {a, b}), NotAvoiding);
}

TEST(CertificateTest, JsonAndCsv) {
  auto c = verify_an_bound(2);
  auto j = to_json(c);
  EXPECT_EQ(j["max_density"], "1/4");
  EXPECT_EQ(j["paper_bound"], "1/4");
  EXPECT_EQ(j["entries"].size(), 4u);
  std::ostringstream os;
  write_csv(os, c);
  EXPECT_NE(os.str().find("\"chain{1,2}\",3,12,1/4,0.250000000,,true,true"), std::string::npos);
}

}  // namespace
}  // namespace parallelo
