// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cli.hpp"

using namespace parallelo;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> why;
  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      why.push_back(msg);
    }
  }
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};

FamilySpec an(int n) { return {Family::An, n, std::nullopt}; }
FamilySpec dn(int n) { return {Family::Dn, n, std::nullopt}; }
FamilySpec cube(int n) { return {Family::Cube, n, std::nullopt}; }

RationalVector V(std::initializer_list<long> xs) { return RationalVector::from_ints(xs); }

std::vector<ReducedPlanarBasis> hexagon_bases() {
  return {regular_hexagon_basis(), reduce_planar_basis(V({3, 0}), V({1, 3})), reduce_planar_basis(V({5, 0}), V({2, 4})),
          reduce_planar_basis(V({4, 0}), V({1, 3}))};
}

std::string str(const Rational& r) { return to_fraction_string(r); }

void an_certificates(Check& c) {
  for (int n = 2; n <= 8; ++n) {
    Timer t;
    auto cert = verify_an_bound(n);
    const Rational target = 1 / detail::pow2(n);
    c.require(cert.max_density == target, "A" + std::to_string(n) + " max " + str(cert.max_density));
    ChainClique full{n, {}};
    for (int w = 1; w <= n; ++w) full.weights.push_back(w);
    c.require(cert.maximizers == std::vector<std::string>{full.name()}, "A" + std::to_string(n) + " maximizers not the full chain");
    for (const auto& e : cert.entries) c.require(e.cross_checked, "A" + std::to_string(n) + " " + e.structure + " not brute-forced");
    c.require(t.seconds() < 10, "A" + std::to_string(n) + " took " + std::to_string(t.seconds()) + " s");
  }
}

void an_formula(Check& c) {
  Timer t;
  for (int n = 2; n <= 6; ++n) {
    const auto g = an_density_graph(n);
    for (const auto& cl : enumerate_chain_cliques(n)) {
      std::vector<int> ids;
      for (const auto& p : cl.points()) ids.push_back(g.find(p));
      bool present = std::all_of(ids.begin(), ids.end(), [](int i) { return i >= 0; });
      c.require(present, cl.name() + " not in the A" + std::to_string(n) + " box");
      if (!present) continue;
      const long brute = static_cast<long>(closed_neighborhood(g, ids).size());
      c.require(brute == an_neighborhood_size_formula(n, cl.weights),
                "A" + std::to_string(n) + " " + cl.name() + ": |N[C]| " + std::to_string(brute));
    }
  }
  c.require(t.seconds() < 60, "took " + std::to_string(t.seconds()) + " s");
}

void dn_certificates(Check& c) {
  for (int n = 4; n <= 8; ++n) {
    Timer t;
    auto cert = verify_dn_bound(n);
    const Rational target = 1 / (Rational(3, 4) * detail::pow2(n) + n - 1);
    c.require(cert.max_density == target, "D" + std::to_string(n) + " max " + str(cert.max_density));
    if (n == 4) {
      for (const auto& e : cert.entries)
        if (!e.matches_paper())
          c.require(false, "D4 " + e.structure + ": computed " + str(e.density) + ", listed " + str(*e.paper_density));
    }
    c.require(t.seconds() < 30, "D" + std::to_string(n) + " took " + std::to_string(t.seconds()) + " s");
  }
}

void hexagon_certificates(Check& c) {
  Timer t;
  std::set<Rational> regular;
  for (const auto& e : verify_an_bound(2).entries) regular.insert(e.density);
  c.require(regular == std::set<Rational>{Rational(1, 7), Rational(1, 5), Rational(1, 4)}, "regular clique densities differ");
  std::set<Rational> seen;
  for (const auto& b : hexagon_bases()) {
    auto cert = verify_hexagon_bound(hexagon_pattern(b));
    for (const auto& e : cert.entries) {
      seen.insert(e.density);
      c.require(e.matches_paper(), e.structure + " delta " + str(e.density));
    }
    c.require(cert.assembled_bound == Rational(1, 4), "assembled bound " + str(cert.assembled_bound));
  }
  c.require(seen == std::set<Rational>{Rational(1, 6), Rational(1, 4), Rational(2, 7), Rational(1, 3), Rational(3, 8)},
            "component densities differ");
  c.require(t.seconds() < 10, "took " + std::to_string(t.seconds()) + " s");
}

void property_d(Check& c) {
  Timer t;
  auto run = [](const FamilySpec& f, const Rational& R, PropertyDMode m) {
    const auto g = family_property_d_graph(f, R);
    return std::pair{g, check_property_d(g, family_polytope(f).gauge, m)};
  };
  for (const auto& f : {an(2), an(3), an(4), dn(4), dn(5)}) {
    auto [g, rep] = run(f, 2, PropertyDMode::Strong);
    c.require(rep.checked_pairs > 0 && rep.holds(), f.label() + " strong: " + std::to_string(rep.violations.size()) + " violations");
  }
  bool found_opposite = false;
  for (const auto& b : hexagon_bases()) {
    const auto f = FamilySpec::hexagon(b);
    auto [g, weak] = run(f, 3, PropertyDMode::Weak);
    c.require(weak.checked_pairs > 0 && weak.holds(), f.label() + " weak: " + std::to_string(weak.violations.size()) + " violations");
    const auto h = hexagon_pattern(b);
    auto [gs, strong] = run(f, 3, PropertyDMode::Strong);
    for (const auto& v : strong.violations) {
      const auto d = gs.vertex(v.w) - gs.vertex(v.u);
      for (int i = 0; i < 6; ++i) found_opposite = found_opposite || d == Rational(2) * h.interior(i);
    }
  }
  c.require(found_opposite, "no strong-mode hexagon violation of type (s_i, s_{i+3})");
  c.require(t.seconds() < 60, "took " + std::to_string(t.seconds()) + " s");
}

void mis_convergence(Check& c) {
  const auto f = an(2);
  const std::vector<Rational> radii = {Rational(1), Rational(4, 3), Rational(5, 3), Rational(2)};
  auto seq = ratio_sequence(f, radii);
  const auto coloring = CosetColoring::for_family(f);
  for (std::size_t i = 0; i < seq.rows.size(); ++i) {
    const auto& r = seq.rows[i];
    c.require(r.mis.proven(), "R=" + r.radius + " not proven");
    c.require(r.mis.ratio >= Rational(1, 4), "R=" + r.radius + " ratio " + str(r.mis.ratio));
    const auto g = family_unit_distance_graph(f, radii[i]);
    const auto cls = largest_color_class(g, coloring);
    c.require(verify_independent_set(g, cls) && 4 * cls.size() >= g.size(), "R=" + r.radius + " color class witness");
  }
  c.require(seq.rows.back().mis.ratio <= seq.rows.front().mis.ratio, "final ratio above the first");
}

void cube_check(Check& c) {
  Timer t;
  for (int n = 2; n <= 10; ++n) {
    const auto g = family_unit_distance_graph(cube(n), 1);
    const std::size_t v = g.size();
    c.require(v == (std::size_t{1} << n) && g.edge_count() == v * (v - 1) / 2, "cube " + std::to_string(n) + " not complete");
    const auto mis = max_independent_set(g);
    c.require(mis.proven() && mis.ratio == 1 / detail::pow2(n), "cube " + std::to_string(n) + " ratio " + str(mis.ratio));
  }
  c.require(t.seconds() < 1, "took " + std::to_string(t.seconds()) + " s");
}

void counterexample_check(Check& c) {
  Timer t;
  for (int N = 1; N <= 30; ++N) {
    const auto rep = counterexample_density_gap(N);
    const long s = N / 2 + N + 2;
    c.require(rep.s_n_size == s && rep.s_n_independent, "S_" + std::to_string(N) + " wrong");
    c.require(rep.unconstrained.proven() && rep.unconstrained.alpha >= s, "N=" + std::to_string(N) + " alpha");
    c.require(rep.truncation_holds(), "N=" + std::to_string(N) + " truncation");
    if (N == 30) {
      const auto& q = rep.unconstrained.ratio;
      c.require(q > Rational(3, 4) && q <= Rational(8, 9), "N=30 ratio " + str(q));
    }
  }
  c.require(t.seconds() < 30, "took " + std::to_string(t.seconds()) + " s");
}

void coloring_check(Check& c) {
  Timer t;
  std::vector<FamilySpec> fams = {an(2), an(3), an(4), dn(4), cube(2), cube(3), cube(4)};
  for (const auto& b : hexagon_bases()) fams.push_back(FamilySpec::hexagon(b));
  for (const auto& f : fams) {
    const auto rep = verify_coloring(CosetColoring::for_family(f), 10'000, 2024, f.label());
    c.require(rep.sampled_pairs == 10'000 && rep.catalog_pairs > 0 && rep.holds(),
              f.label() + ": " + std::to_string(rep.violations.size()) + " violations");
  }
  std::vector<FamilySpec> equal = {an(2), an(3), an(4), cube(2)};
  for (const auto& b : hexagon_bases()) equal.push_back(FamilySpec::hexagon(b));
  for (const auto& f : equal) {
    const auto r = chromatic_report(f);
    const int want = 1 << f.dim;
    c.require(r.upper == want && r.lower == want, f.label() + " chi in [" + std::to_string(r.lower) + "," + std::to_string(r.upper) + "]");
  }
  const auto g = family_unit_distance_graph(an(2), 2);
  const auto w = chromatic_witness_search(g, 4, 5'000'000, g.find(IntVec(3, 0)));
  c.require(w.found && w.verified && w.subgraph && chromatic_number(*w.subgraph) == 4, "no verified chi = 4 witness");
  c.require(t.seconds() < 120, "took " + std::to_string(t.seconds()) + " s");
}

std::string cli_output(std::vector<std::string> args) {
  args.insert(args.begin(), "parallelo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

void determinism(Check& c) {
  const std::vector<std::vector<std::string>> commands = {
      {"bound", "an", "--dim", "4"},
      {"bound", "dn", "--dim", "5", "--format", "csv"},
      {"bound", "hexagon", "--basis", "3,0,1,3", "--format", "text"},
      {"bound", "cube", "--dim", "3"},
      {"property-d", "dn", "--dim", "4", "--radius", "3/2"},
      {"property-d", "hexagon", "--basis", "3,0,1,3", "--radius", "3", "--mode", "strong"},
      {"ratio", "an", "--dim", "2", "--radii", "1,4/3,5/3"},
      {"ratio", "cube", "--dim", "3", "--radii", "1,2", "--format", "csv"},
      {"counterexample", "--n", "12"},
      {"color", "an", "--dim", "3", "--samples", "2000", "--seed", "77"},
      {"color", "hexagon", "--basis", "5,0,2,4", "--samples", "2000", "--seed", "5", "--format", "csv"},
      {"chromatic", "dn", "--dim", "4"},
      {"witness", "hexagon", "--k", "4", "--radius", "2"},
  };
  for (const auto& cmd : commands) {
    std::string first;
    std::string label;
    for (const auto& a : cmd) label += a + " ";
    for (const char* threads : {"1", "4", "1", "8"}) {
      auto args = cmd;
      if (cmd[0] != "counterexample") {
        args.push_back("--threads");
        args.push_back(threads);
      }
      const auto out = cli_output(args);
      if (first.empty()) first = out;
      c.require(!out.empty() && out == first, label + "differs at --threads " + threads);
    }
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"A_n certificates n=2..8", an_certificates},
      {"A_n neighborhood formula n=2..6", an_formula},
      {"D_n certificates n=4..8", dn_certificates},
      {"hexagon densities", hexagon_certificates},
      {"Property D", property_d},
      {"A_2 independence ratios", mis_convergence},
      {"cube {0,1}^n n=2..10", cube_check},
      {"line graph counterexample N<=30", counterexample_check},
      {"coset colorings and chromatic numbers", coloring_check},
      {"determinism across thread counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    Timer t;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f", t.seconds());
    std::cout << (c.ok ? "PASS" : "FAIL") << ' ' << i + 1 << ' ' << criteria[i].first << " (" << secs << " s)";
    for (const auto& w : c.why) std::cout << "; " << w;
    std::cout << std::endl;
    failed += !c.ok;
  }
  return failed ? 1 : 0;
}
