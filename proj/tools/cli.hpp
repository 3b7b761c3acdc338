#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "parallelo/coloring.hpp"
#include "parallelo/density.hpp"
#include "parallelo/families.hpp"
#include "parallelo/independence.hpp"
#include "parallelo/parallel.hpp"
#include "parallelo/property_d.hpp"
#include "parallelo/report.hpp"

namespace parallelo::cli {

enum Exit : int { Match = 0, Mismatch = 1, Usage = 2, Budget = 3 };

struct Options {
  std::string family = "an";
  int dim = 2;
  std::string basis;
  std::string format = "json";
  std::string out;
  int threads = 0;
  std::string radius = "2";
  std::string radii = "1,3/2,2";
  std::string mode = "strong";
  std::uint64_t budget = 20'000'000;
  std::size_t states = 1'500'000;
  std::size_t samples = 10'000;
  std::uint64_t seed = 0;
  int k = 4;
  int n = 20;
};

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  if (out.empty()) throw std::invalid_argument("empty list: '" + text + "'");
  return out;
}

/// "a,b,c,d" -> basis (a,b), (c,d); any even count of entries.
inline ReducedPlanarBasis parse_basis(const std::string& text) {
  auto xs = parse_rational_list(text);
  if (xs.size() % 2 != 0 || xs.size() < 4) throw std::invalid_argument("--basis needs two vectors of equal dimension >= 2");
  const std::size_t d = xs.size() / 2;
  RationalVector b0(d), b1(d);
  for (std::size_t i = 0; i < d; ++i) {
    b0[i] = xs[i];
    b1[i] = xs[d + i];
  }
  return reduce_planar_basis(b0, b1);
}

inline FamilySpec family_spec(const Options& o) {
  auto f = parse_family(o.family);
  if (!f) throw std::invalid_argument("unknown family '" + o.family + "' (an, dn, hexagon, cube, counterexample)");
  if (*f == Family::Hexagon) return FamilySpec::hexagon(o.basis.empty() ? regular_hexagon_basis() : parse_basis(o.basis));
  return {*f, o.dim, std::nullopt};
}

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One report in the requested format.
struct Emitter {
  const Options& o;
  std::ostream& out;

  void emit(const std::function<OrderedJson()>& json, const std::function<void(std::ostream&)>& text,
            const std::function<void(std::ostream&)>& csv) const {
    std::ostringstream buf;
    if (o.format == "json") {
      buf << json().dump(2) << '\n';
    } else if (o.format == "text") {
      text(buf);
    } else if (o.format == "csv") {
      csv(buf);
    } else {
      throw UsageError("--format must be json, csv or text");
    }
    if (o.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream f(o.out, std::ios::binary);
      if (!f) throw UsageError("cannot write " + o.out);
      f << buf.str();
    }
  }
};

inline int cmd_bound(const Options& o, const Emitter& e) {
  const auto f = family_spec(o);
  DensityCertificate c;
  switch (f.family) {
    case Family::An: c = verify_an_bound(f.dim); break;
    case Family::Dn: c = verify_dn_bound(f.dim); break;
    case Family::Hexagon: c = verify_hexagon_bound(hexagon_pattern(*f.basis)); break;
    case Family::Cube: c = verify_cube_bound(f.dim); break;
    default: throw UsageError("bound supports an, dn, hexagon, cube");
  }
  e.emit([&] { return to_json(c); }, [&](std::ostream& s) { write_text(s, c); }, [&](std::ostream& s) { write_csv(s, c); });
  return c.bound_matches_paper() ? Match : Mismatch;
}

inline int cmd_property_d(const Options& o, const Emitter& e) {
  const auto f = family_spec(o);
  if (o.mode != "strong" && o.mode != "weak") throw UsageError("--mode must be strong or weak");
  const bool strong = o.mode == "strong";
  auto g = family_property_d_graph(f, parse_rational(o.radius), o.threads);
  auto rep = check_property_d(g, family_polytope(f).gauge, strong ? PropertyDMode::Strong : PropertyDMode::Weak);
  const bool expect = property_d_expected_to_hold(f, strong);
  const std::string expected = expect ? "no violations" : "violations on (s_i, s_{i+3}) pairs";
  e.emit([&] { return to_json(g, rep, expected); }, [&](std::ostream& s) { write_text(s, g, rep, expected); },
         [&](std::ostream& s) { write_csv(s, g, rep); });
  return rep.holds() == expect ? Match : Mismatch;
}

inline int cmd_ratio(const Options& o, const Emitter& e) {
  const auto f = family_spec(o);
  auto seq = ratio_sequence(f, parse_rational_list(o.radii), {o.budget, o.states}, o.threads);
  e.emit([&] { return to_json(seq); }, [&](std::ostream& s) { write_text(s, seq); }, [&](std::ostream& s) { write_csv(s, seq); });
  if (!seq.all_proven()) return Budget;
  for (const auto& r : seq.rows)
    if (r.mis.ratio < seq.lower_bound) return Mismatch;
  return Match;
}

inline int cmd_counterexample(const Options& o, const Emitter& e) {
  if (o.n < 1) throw UsageError("--n must be >= 1");
  auto rep = counterexample_density_gap(o.n, {o.budget, o.states});
  e.emit([&] { return to_json(rep); }, [&](std::ostream& s) { write_text(s, rep); }, [&](std::ostream& s) { write_csv(s, rep); });
  bool proven = rep.unconstrained.proven();
  for (const auto& c : rep.constrained) proven = proven && c.proven;
  if (!proven) return Budget;
  return rep.s_n_independent && rep.unconstrained.alpha >= rep.s_n_size && rep.truncation_holds() ? Match : Mismatch;
}

inline int cmd_color(const Options& o, const Emitter& e) {
  const auto f = family_spec(o);
  auto rep = verify_coloring(CosetColoring::for_family(f), o.samples, o.seed, f.label());
  e.emit([&] { return to_json(rep, o.seed); }, [&](std::ostream& s) { write_text(s, rep); },
         [&](std::ostream& s) {
           s << "family,colors,sampled_pairs,catalog_pairs,violations,cover_failures\n"
             << '"' << rep.family << "\"," << rep.color_count << ',' << rep.sampled_pairs << ',' << rep.catalog_pairs << ','
             << rep.violations.size() << ',' << rep.cover_failures << '\n';
         });
  return rep.holds() ? Match : Mismatch;
}

inline int cmd_chromatic(const Options& o, const Emitter& e) {
  const auto f = family_spec(o);
  auto rep = chromatic_report(f);
  e.emit([&] { return to_json(rep); }, [&](std::ostream& s) { write_text(s, rep); },
         [&](std::ostream& s) {
           s << "family,lower,upper,density_bound,equal\n"
             << '"' << rep.family << "\"," << rep.lower << ',' << rep.upper << ',' << to_fraction_string(rep.density_bound)
             << ',' << (rep.equal() ? "true" : "false") << '\n';
         });
  // The corollaries assert equality for A_n and planar families only.
  const bool expect_equal = f.family != Family::Dn;
  return rep.equal() == expect_equal ? Match : Mismatch;
}

/// Vertex of smallest sup norm (lowest index on ties).
inline int central_vertex(const GeometricGraph& g) {
  int best = 0;
  for (int v = 1; v < static_cast<int>(g.size()); ++v)
    if (sup_extent(g.point(v)) < sup_extent(g.point(best))) best = v;
  return best;
}

inline int cmd_witness(const Options& o, const Emitter& e) {
  const auto f = family_spec(o);
  if (o.k < 1 || o.k > 8) throw UsageError("--k must be in 1..8");
  auto g = family_unit_distance_graph(f, parse_rational(o.radius), o.threads);
  auto w = chromatic_witness_search(g, o.k, o.budget, central_vertex(g));
  e.emit([&] { return to_json(g, w); },
         [&](std::ostream& s) {
           if (w.subgraph) {
             write_edge_list(s, *w.subgraph);
           } else {
             s << "# no witness with chromatic number " << o.k << (w.exhausted ? " (budget exhausted)" : "") << '\n';
           }
         },
         [&](std::ostream& s) {
           s << "u,v\n";
           if (w.subgraph)
             for (auto [a, b] : w.subgraph->edges()) s << a << ',' << b << '\n';
         });
  if (w.found) return w.verified ? Match : Mismatch;
  return w.exhausted ? Budget : Mismatch;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parallelohedron norm certificates, independence ratios and colorings"};
  app.require_subcommand(1);
  Options o;
  o.threads = default_thread_count();

  auto common = [&](CLI::App* c, bool family) {
    if (family) c->add_option("family", o.family, "an, dn, hexagon, cube or counterexample")->required();
    c->add_option("--dim", o.dim, "dimension n");
    c->add_option("--basis", o.basis, "hexagon lattice basis as b0,b1 coordinates, e.g. 3,0,1,3");
    c->add_option("--format", o.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--threads", o.threads, "worker threads (default: PARALLELO_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
  };
  std::vector<std::pair<CLI::App*, std::function<int(const Options&, const Emitter&)>>> cmds;

  auto* bound = app.add_subcommand("bound", "local density certificate for a family");
  common(bound, true);
  cmds.push_back({bound, cmd_bound});

  auto* pd = app.add_subcommand("property-d", "check Property D on the auxiliary graph");
  common(pd, true);
  pd->add_option("--radius", o.radius, "box radius");
  pd->add_option("--mode", o.mode, "strong or weak")->check(CLI::IsMember({"strong", "weak"}));
  cmds.push_back({pd, cmd_property_d});

  auto* ratio = app.add_subcommand("ratio", "exact independence ratios of unit-distance box graphs");
  common(ratio, true);
  ratio->add_option("--radii", o.radii, "comma-separated box radii, e.g. 1,3/2,2");
  ratio->add_option("--budget", o.budget, "branch-and-bound node budget");
  ratio->add_option("--states", o.states, "frontier DP state budget");
  cmds.push_back({ratio, cmd_ratio});

  auto* cex = app.add_subcommand("counterexample", "the line graph a<0 ~ b>-2a on [-N, N]");
  common(cex, false);
  cex->add_option("--n", o.n, "N");
  cex->add_option("--budget", o.budget, "branch-and-bound node budget");
  cex->add_option("--states", o.states, "frontier DP state budget");
  cmds.push_back({cex, cmd_counterexample});

  auto* color = app.add_subcommand("color", "verify the coset coloring on sampled unit-distance pairs");
  common(color, true);
  color->add_option("--samples", o.samples, "random pairs");
  color->add_option("--seed", o.seed, "sampling seed")->required();
  cmds.push_back({color, cmd_color});

  auto* chrom = app.add_subcommand("chromatic", "chromatic number bounds for a family");
  common(chrom, true);
  cmds.push_back({chrom, cmd_chromatic});

  auto* witness = app.add_subcommand("witness", "search a finite subgraph with chromatic number k");
  common(witness, true);
  witness->add_option("--k", o.k, "target chromatic number");
  witness->add_option("--radius", o.radius, "box radius of the host graph");
  witness->add_option("--budget", o.budget, "coloring search node budget");
  cmds.push_back({witness, cmd_witness});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return Match;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  }
  try {
    for (auto& [sub, fn] : cmds)
      if (sub->parsed()) return fn(o, Emitter{o, out});
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const DegenerateCell& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const UnsupportedFamily& e) {
    err << "error: " << e.what() << '\n';
    return Usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return Mismatch;
  }
  return Usage;
}

}  // namespace parallelo::cli
