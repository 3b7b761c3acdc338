#pragma once

#include <string>
#include <vector>

#include "parallelo/gauge.hpp"
#include "parallelo/graph.hpp"

namespace parallelo {

/// Two vertices at graph distance exactly 2 and their common neighbors.
struct DistanceTwoPair {
  int u;
  int w;
  std::vector<int> common;
};

/// Unordered pairs at graph distance exactly 2 with at least one interior
/// endpoint (whose 2-neighborhood is complete, so the distance is exact).
/// Ordered by (u, w) with u < w.
inline std::vector<DistanceTwoPair> graph_distance_2_pairs(const GeometricGraph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> mark(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> via(static_cast<std::size_t>(n));
  std::vector<DistanceTwoPair> found;
  for (int u = 0; u < n; ++u) {
    if (!g.interior(u)) continue;
    std::vector<int> touched;
    for (int z : g.neighbors(u))
      for (int w : g.neighbors(z)) {
        if (w == u || g.adjacent(u, w)) continue;
        if (mark[static_cast<std::size_t>(w)] != u) {
          mark[static_cast<std::size_t>(w)] = u;
          via[static_cast<std::size_t>(w)].clear();
          touched.push_back(w);
        }
        via[static_cast<std::size_t>(w)].push_back(z);
      }
    for (int w : touched) {
      // Skip pairs the other interior endpoint reports.
      if (w < u && g.interior(w)) continue;
      auto common = via[static_cast<std::size_t>(w)];
      std::sort(common.begin(), common.end());
      found.push_back({std::min(u, w), std::max(u, w), std::move(common)});
    }
  }
  std::sort(found.begin(), found.end(), [](const DistanceTwoPair& a, const DistanceTwoPair& b) {
    return std::pair(a.u, a.w) < std::pair(b.u, b.w);
  });
  return found;
}

enum class PropertyDMode { Strong, Weak };

inline std::string property_d_mode_name(PropertyDMode m) { return m == PropertyDMode::Strong ? "strong" : "weak"; }

struct PropertyDViolation {
  int u;
  int w;
  int graph_distance;
  Rational gauge_value;
};

struct PropertyDReport {
  PropertyDMode mode = PropertyDMode::Strong;
  std::size_t checked_pairs = 0;
  std::vector<PropertyDViolation> violations;
  bool holds() const { return violations.empty(); }
};

/// Strong: every distance-2 pair has gauge distance exactly 1. Weak: only
/// pairs with a common neighbor of class B are checked.
inline PropertyDReport check_property_d(const GeometricGraph& g, const GaugeNorm& gauge, PropertyDMode mode) {
  if (mode == PropertyDMode::Weak && !g.has_classes())
    throw std::invalid_argument("weak Property D needs A/B class tags");
  const ScaledGauge sg(gauge, g.scale());
  PropertyDReport rep;
  rep.mode = mode;
  for (const auto& p : graph_distance_2_pairs(g)) {
    if (mode == PropertyDMode::Weak &&
        std::none_of(p.common.begin(), p.common.end(), [&](int z) { return g.vertex_class(z) == VertexClass::B; }))
      continue;
    ++rep.checked_pairs;
    if (!sg.is_unit_diff(g.point(p.u), g.point(p.w)))
      rep.violations.push_back({p.u, p.w, 2, make_rational(sg.numerator_diff(g.point(p.u), g.point(p.w)), sg.divisor())});
  }
  return rep;
}

}  // namespace parallelo
