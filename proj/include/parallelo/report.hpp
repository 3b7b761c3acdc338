#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "json.hpp"
#include "parallelo/coloring.hpp"
#include "parallelo/density.hpp"
#include "parallelo/independence.hpp"
#include "parallelo/property_d.hpp"

namespace parallelo {

using OrderedJson = nlohmann::ordered_json;

inline std::string decimal(const Rational& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", to_double(r));
  return buf;
}

inline OrderedJson to_json(const GeometricGraph& g, const PropertyDReport& r, const std::string& expected) {
  OrderedJson j;
  j["rule"] = edge_rule_name(g.rule());
  j["detail"] = g.rule_detail();
  j["vertices"] = g.size();
  j["edges"] = g.edge_count();
  j["margin"] = to_fraction_string(g.margin());
  j["mode"] = property_d_mode_name(r.mode);
  j["checked_pairs"] = r.checked_pairs;
  j["holds"] = r.holds();
  j["paper_expectation"] = expected;
  j["violations"] = OrderedJson::array();
  for (const auto& v : r.violations) {
    OrderedJson x;
    x["u"] = g.vertex(v.u).to_string();
    x["w"] = g.vertex(v.w).to_string();
    x["difference"] = (g.vertex(v.w) - g.vertex(v.u)).to_string();
    x["graph_distance"] = v.graph_distance;
    x["gauge_distance"] = to_fraction_string(v.gauge_value);
    j["violations"].push_back(std::move(x));
  }
  return j;
}

inline void write_text(std::ostream& os, const GeometricGraph& g, const PropertyDReport& r, const std::string& expected) {
  os << "property D (" << property_d_mode_name(r.mode) << ") on " << g.rule_detail() << ": " << g.size() << " vertices, "
     << r.checked_pairs << " distance-2 pairs, " << r.violations.size() << " violations; paper: " << expected << '\n';
  for (const auto& v : r.violations)
    os << "  " << g.vertex(v.u).to_string() << " -- " << g.vertex(v.w).to_string() << "  gauge "
       << to_fraction_string(v.gauge_value) << '\n';
}

inline void write_csv(std::ostream& os, const GeometricGraph& g, const PropertyDReport& r) {
  os << "u,w,graph_distance,gauge_distance\n";
  for (const auto& v : r.violations)
    os << '"' << g.vertex(v.u).to_string() << "\",\"" << g.vertex(v.w).to_string() << "\"," << v.graph_distance << ','
       << to_fraction_string(v.gauge_value) << '\n';
}

inline OrderedJson to_json(const MisResult& r) {
  OrderedJson j;
  j["alpha"] = r.alpha;
  j["vertices"] = r.vertex_count;
  j["ratio"] = to_fraction_string(r.ratio);
  j["ratio_decimal"] = decimal(r.ratio);
  j["optimality"] = r.proven() ? "proven" : "timed_out";
  j["best_lower"] = r.best_lower;
  j["best_upper"] = r.best_upper;
  j["method"] = r.method;
  j["witness"] = r.witness;
  return j;
}

inline OrderedJson to_json(const RatioSequence& s) {
  OrderedJson j;
  j["family"] = s.family;
  j["dimension"] = s.dimension;
  j["target_bound"] = to_fraction_string(s.target_bound);
  j["lower_construction"] = to_fraction_string(s.lower_bound);
  j["rows"] = OrderedJson::array();
  for (const auto& r : s.rows) {
    OrderedJson x;
    x["radius"] = r.radius;
    auto m = to_json(r.mis);
    m.erase("witness");
    x.update(m);
    x["at_least_construction"] = r.mis.ratio >= s.lower_bound;
    j["rows"].push_back(std::move(x));
  }
  return j;
}

inline void write_text(std::ostream& os, const RatioSequence& s) {
  os << s.family << ": bound " << to_fraction_string(s.target_bound) << ", construction "
     << to_fraction_string(s.lower_bound) << '\n';
  for (const auto& r : s.rows)
    os << "  R=" << r.radius << "  |V|=" << r.vertices << "  alpha=" << r.mis.alpha << "  ratio="
       << to_fraction_string(r.mis.ratio) << " (" << decimal(r.mis.ratio) << ")"
       << (r.mis.proven() ? "" : "  timed out, upper " + std::to_string(r.mis.best_upper)) << '\n';
}

inline OrderedJson to_json(const CounterexampleReport& r) {
  OrderedJson j;
  j["N"] = r.N;
  j["alpha"] = r.unconstrained.alpha;
  j["vertices"] = r.unconstrained.vertex_count;
  j["ratio"] = to_fraction_string(r.unconstrained.ratio);
  j["ratio_decimal"] = decimal(r.unconstrained.ratio);
  j["proven"] = r.unconstrained.proven();
  j["s_n_size"] = r.s_n_size;
  j["s_n_independent"] = r.s_n_independent;
  j["alpha_exceeds_s_n"] = r.unconstrained.alpha > r.s_n_size;
  j["truncation_holds"] = r.truncation_holds();
  j["constrained"] = OrderedJson::array();
  for (const auto& c : r.constrained)
    j["constrained"].push_back({{"k", c.k}, {"alpha", c.alpha}, {"max_vertex", c.max_vertex}, {"proven", c.proven}});
  return j;
}

inline void write_text(std::ostream& os, const CounterexampleReport& r) {
  os << "G_" << r.N << ": alpha=" << r.unconstrained.alpha << "/" << r.unconstrained.vertex_count << " = "
     << to_fraction_string(r.unconstrained.ratio) << ", |S_N|=" << r.s_n_size
     << ", truncation " << (r.truncation_holds() ? "holds" : "FAILS") << '\n';
  for (const auto& c : r.constrained)
    os << "  -" << c.k << " forced: alpha=" << c.alpha << ", largest vertex " << c.max_vertex << '\n';
}

inline void write_csv(std::ostream& os, const CounterexampleReport& r) {
  os << "k,alpha,max_vertex,bound_2k,proven\n";
  for (const auto& c : r.constrained)
    os << c.k << ',' << c.alpha << ',' << c.max_vertex << ',' << 2 * c.k << ',' << (c.proven ? "true" : "false") << '\n';
}

inline OrderedJson to_json(const ColoringReport& r, std::uint64_t seed) {
  OrderedJson j;
  j["family"] = r.family;
  j["colors"] = r.color_count;
  j["seed"] = seed;
  j["sampled_pairs"] = r.sampled_pairs;
  j["catalog_pairs"] = r.catalog_pairs;
  j["cover_checks"] = r.cover_checks;
  j["cover_failures"] = r.cover_failures;
  j["colors_seen"] = r.colors_seen.size();
  j["violation_count"] = r.violations.size();
  j["paper_expectation"] = 0;
  j["violations"] = OrderedJson::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"x", v.x.to_string()}, {"y", v.y.to_string()}, {"color", v.color}});
  return j;
}

inline void write_text(std::ostream& os, const ColoringReport& r) {
  os << r.family << ": " << r.color_count << " colors, " << r.sampled_pairs << " sampled + " << r.catalog_pairs
     << " catalog pairs, " << r.violations.size() << " violations, " << r.cover_failures << " cover failures\n";
  for (const auto& v : r.violations) os << "  " << v.x.to_string() << " -- " << v.y.to_string() << "  color " << v.color << '\n';
}

inline OrderedJson to_json(const ChromaticReport& r) {
  OrderedJson j;
  j["family"] = r.family;
  j["upper"] = r.upper;
  j["lower"] = r.lower;
  j["density_bound"] = to_fraction_string(r.density_bound);
  j["lower_source"] = r.lower_source;
  j["conclusion"] = r.equal() ? "chi = " + std::to_string(r.upper) : "inconclusive gap";
  return j;
}

inline void write_text(std::ostream& os, const ChromaticReport& r) {
  os << r.family << ": " << r.lower << " <= chi <= " << r.upper << (r.equal() ? " (equal)" : " (gap)") << "; lower from "
     << r.lower_source << ", density " << to_fraction_string(r.density_bound) << '\n';
}

inline OrderedJson to_json(const GeometricGraph& g, const WitnessResult& w) {
  OrderedJson j;
  j["k"] = w.k;
  j["found"] = w.found;
  j["verified"] = w.verified;
  j["exhausted"] = w.exhausted;
  j["nodes"] = w.nodes;
  j["vertices"] = OrderedJson::array();
  for (int v : w.vertices) j["vertices"].push_back(g.vertex(v).to_string());
  j["edges"] = OrderedJson::array();
  if (w.subgraph)
    for (auto [a, b] : w.subgraph->edges()) j["edges"].push_back({a, b});
  j["coloring"] = w.coloring;
  return j;
}

}  // namespace parallelo
