#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "parallelo/errors.hpp"
#include "parallelo/linalg.hpp"
#include "parallelo/planar.hpp"
#include "parallelo/scaled.hpp"
#include "parallelo/vector.hpp"

namespace parallelo {

/// The constraint <a, x> <= c of one facet of the unit ball.
struct Functional {
  RationalVector a;
  Rational c;
};

/// Gauge of a centrally symmetric polytope given by its facet functionals:
/// |x| = max_f <a_f, x> / c_f. Inputs may be required to be orthogonal to a
/// set of normals (A_n lives in a hyperplane, embedded planar lattices in a
/// plane).
class GaugeNorm {
 public:
  GaugeNorm() = default;
  GaugeNorm(std::string name, std::size_t dim, std::vector<Functional> functionals,
            std::vector<RationalVector> normals = {})
      : name_(std::move(name)), dim_(dim), functionals_(std::move(functionals)), normals_(std::move(normals)) {
    for (const auto& f : functionals_) {
      if (f.a.dim() != dim_) throw DimensionMismatch("functional dimension differs from gauge dimension");
      if (f.c <= 0) throw std::invalid_argument("functional bound must be positive");
    }
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Functional>& functionals() const { return functionals_; }
  const std::vector<RationalVector>& normals() const { return normals_; }

  void check_domain(const RationalVector& x) const {
    if (x.dim() != dim_)
      throw DimensionMismatch(name_ + " expects dimension " + std::to_string(dim_) + ", got " + std::to_string(x.dim()));
    for (const auto& nv : normals_)
      if (dot(nv, x) != 0) throw InputOffHyperplane(name_ + ": input " + x.to_string() + " is off the gauge's subspace");
  }

  Rational operator()(const RationalVector& x) const {
    check_domain(x);
    Rational best = 0;
    for (const auto& f : functionals_) {
      Rational v = dot(f.a, x) / f.c;
      if (v > best) best = v;
    }
    return best;
  }

  /// True iff x lies in the closed unit ball.
  bool contains(const RationalVector& x) const { return (*this)(x) <= 1; }

  bool is_symmetric() const {
    for (const auto& f : functionals_) {
      bool found = std::any_of(functionals_.begin(), functionals_.end(), [&](const Functional& g) {
        return g.a == -f.a && g.c == f.c;
      });
      if (!found) return false;
    }
    return true;
  }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<Functional> functionals_;
  std::vector<RationalVector> normals_;
};

/// Integer evaluation of a gauge on points of the 1/scale grid:
/// |y/scale| = max_f <row_f, y> / divisor.
class ScaledGauge {
 public:
  ScaledGauge() = default;
  ScaledGauge(const GaugeNorm& g, std::int64_t scale) : dim_(g.dim()) {
    Integer m = 1;
    std::vector<RationalVector> normalized;
    for (const auto& f : g.functionals()) {
      RationalVector a = f.a * Rational(1 / f.c);
      m = lcm_scale(to_int64(m), common_denominator(a));
      normalized.push_back(std::move(a));
    }
    for (const auto& a : normalized) rows_.push_back(to_scaled(a, to_int64(m)));
    divisor_ = to_int64(m) * scale;
    scale_ = scale;
  }

  std::int64_t divisor() const { return divisor_; }
  std::int64_t scale() const { return scale_; }

  std::int64_t numerator(const IntVec& y) const {
    std::int64_t best = 0;
    for (const auto& r : rows_) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < dim_; ++i) s += r[i] * y[i];
      best = std::max(best, s);
    }
    return best;
  }
  std::int64_t numerator_diff(const IntVec& a, const IntVec& b) const {
    std::int64_t best = 0;
    for (const auto& r : rows_) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < dim_; ++i) s += r[i] * (a[i] - b[i]);
      best = std::max(best, s);
    }
    return best;
  }

  Rational value(const IntVec& y) const { return make_rational(numerator(y), divisor_); }
  bool is_unit(const IntVec& y) const { return numerator(y) == divisor_; }
  bool is_unit_diff(const IntVec& a, const IntVec& b) const { return numerator_diff(a, b) == divisor_; }

 private:
  std::size_t dim_ = 0;
  std::vector<IntVec> rows_;
  std::int64_t divisor_ = 1;
  std::int64_t scale_ = 1;
};

/// Voronoi-cell gauge of A_n in ambient R^{n+1}: max_j x_j - min_i x_i.
inline GaugeNorm gauge_an(int n) {
  if (n < 2) throw DimensionMismatch("gauge_an needs n >= 2");
  const std::size_t d = static_cast<std::size_t>(n) + 1;
  std::vector<Functional> fs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) fs.push_back({unit_vector(d, j) - unit_vector(d, i), Rational(1)});
  RationalVector ones(d);
  for (std::size_t i = 0; i < d; ++i) ones[i] = 1;
  return GaugeNorm("A" + std::to_string(n), d, std::move(fs), {ones});
}

/// Voronoi-cell gauge of D_n: max_{i != j} |x_i| + |x_j|.
inline GaugeNorm gauge_dn(int n) {
  if (n < 4) throw DimensionMismatch("gauge_dn needs n >= 4");
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<Functional> fs;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (int si : {1, -1})
        for (int sj : {1, -1})
          fs.push_back({Rational(si) * unit_vector(d, i) + Rational(sj) * unit_vector(d, j), Rational(1)});
  return GaugeNorm("D" + std::to_string(n), d, std::move(fs));
}

/// Sup norm; its unit ball [-1,1]^n is the Voronoi cell of 2Z^n.
inline GaugeNorm gauge_sup(int n) {
  if (n < 1) throw DimensionMismatch("gauge_sup needs n >= 1");
  const std::size_t d = static_cast<std::size_t>(n);
  std::vector<Functional> fs;
  for (std::size_t i = 0; i < d; ++i) {
    fs.push_back({unit_vector(d, i), Rational(1)});
    fs.push_back({-unit_vector(d, i), Rational(1)});
  }
  return GaugeNorm("sup" + std::to_string(n), d, std::move(fs));
}

/// Voronoi-cell gauge of a hexagonal planar lattice:
/// |x| = max over relevant v of 2<x,v>/<v,v>.
inline GaugeNorm gauge_planar(const ReducedPlanarBasis& b) {
  std::vector<Functional> fs;
  for (const auto& v : b.relevant_vectors()) fs.push_back({v, norm2(v) / 2});
  auto normals = orthogonal_complement({b.beta0, b.beta1}, b.ambient_dim());
  return GaugeNorm("hexagon", b.ambient_dim(), std::move(fs), std::move(normals));
}

namespace closed_form {

inline Rational an(const RationalVector& x) {
  Rational mx = x[0], mn = x[0];
  for (const auto& v : x) {
    if (v > mx) mx = v;
    if (v < mn) mn = v;
  }
  return mx - mn;
}

inline Rational dn(const RationalVector& x) {
  std::vector<Rational> a;
  for (const auto& v : x) a.push_back(abs(v));
  std::sort(a.begin(), a.end(), [](const Rational& p, const Rational& q) { return p > q; });
  return a[0] + a[1];
}

inline Rational sup(const RationalVector& x) { return sup_extent(x); }

}  // namespace closed_form

}  // namespace parallelo
