#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "parallelo/errors.hpp"
#include "parallelo/linalg.hpp"
#include "parallelo/planar.hpp"
#include "parallelo/vector.hpp"

namespace parallelo {

enum class LatticeFamily { Zn, An, Dn, Planar };

inline std::string family_name(LatticeFamily f) {
  switch (f) {
    case LatticeFamily::Zn: return "Zn";
    case LatticeFamily::An: return "An";
    case LatticeFamily::Dn: return "Dn";
    case LatticeFamily::Planar: return "Planar";
  }
  return "?";
}

/// A lattice from one of the supported families, optionally scaled by a
/// positive rational factor. A_n lives in the sum-zero hyperplane of
/// Z^{n+1}; the others in their natural ambient space.
class LatticeSpec {
 public:
  static LatticeSpec zn(int n) {
    if (n < 1) throw DimensionMismatch("Zn needs n >= 1");
    return LatticeSpec(LatticeFamily::Zn, n);
  }
  static LatticeSpec an(int n) {
    if (n < 1) throw DimensionMismatch("An needs n >= 1");
    return LatticeSpec(LatticeFamily::An, n);
  }
  static LatticeSpec dn(int n) {
    if (n < 2) throw DimensionMismatch("Dn needs n >= 2");
    return LatticeSpec(LatticeFamily::Dn, n);
  }
  static LatticeSpec planar(const RationalVector& b0, const RationalVector& b1) {
    if (b0.dim() != b1.dim() || b0.dim() < 2) throw DimensionMismatch("planar basis must be two vectors of equal dim >= 2");
    Rational det = norm2(b0) * norm2(b1) - dot(b0, b1) * dot(b0, b1);
    if (det == 0) throw DegenerateCell("planar basis is degenerate (det = 0)");
    LatticeSpec l(LatticeFamily::Planar, 2);
    l.planar_ = {b0, b1};
    return l;
  }

  /// The lattice t * L.
  LatticeSpec scaled(const Rational& t) const {
    if (t <= 0) throw std::invalid_argument("lattice scale must be positive");
    LatticeSpec l = *this;
    l.scale_ *= t;
    return l;
  }

  LatticeFamily family() const { return family_; }
  int rank() const { return n_; }
  std::size_t ambient_dim() const {
    switch (family_) {
      case LatticeFamily::An: return static_cast<std::size_t>(n_) + 1;
      case LatticeFamily::Planar: return planar_[0].dim();
      default: return static_cast<std::size_t>(n_);
    }
  }
  const Rational& scale() const { return scale_; }
  const std::vector<RationalVector>& planar_basis() const { return planar_; }

  std::string name() const {
    std::string s = family_ == LatticeFamily::Planar
                        ? "Planar[" + planar_[0].to_string() + "," + planar_[1].to_string() + "]"
                        : family_name(family_) + "(" + std::to_string(n_) + ")";
    if (scale_ != 1) s = scale_.get_str() + "*" + s;
    return s;
  }

  /// Basis vectors (scale included), in ambient coordinates.
  std::vector<RationalVector> basis() const {
    std::vector<RationalVector> b;
    const std::size_t d = ambient_dim();
    switch (family_) {
      case LatticeFamily::Zn:
        for (std::size_t i = 0; i < d; ++i) b.push_back(unit_vector(d, i));
        break;
      case LatticeFamily::An:
        for (std::size_t i = 0; i + 1 < d; ++i) b.push_back(unit_vector(d, i) - unit_vector(d, i + 1));
        break;
      case LatticeFamily::Dn:
        for (std::size_t i = 0; i + 1 < d; ++i) b.push_back(unit_vector(d, i) - unit_vector(d, i + 1));
        b.push_back(unit_vector(d, d - 2) + unit_vector(d, d - 1));
        break;
      case LatticeFamily::Planar:
        b = planar_;
        break;
    }
    for (auto& v : b) v *= scale_;
    return b;
  }

  void check_dim(const RationalVector& x) const {
    if (x.dim() != ambient_dim())
      throw DimensionMismatch(name() + " expects dimension " + std::to_string(ambient_dim()) + ", got " +
                              std::to_string(x.dim()));
  }

  bool contains(const RationalVector& x) const {
    check_dim(x);
    if (family_ == LatticeFamily::Planar) {
      auto coeffs = apply_matrix(coefficient_map(basis()), x);
      for (const auto& c : coeffs)
        if (!is_integer(c)) return false;
      return combine(basis(), coeffs) == x;
    }
    RationalVector y = x * Rational(1 / scale_);
    for (const auto& c : y)
      if (!is_integer(c)) return false;
    Rational s = coordinate_sum(y);
    if (family_ == LatticeFamily::An) return s == 0;
    if (family_ == LatticeFamily::Dn) return mpz_even_p(s.get_num_mpz_t()) != 0;
    return true;
  }

  /// Integer coordinates of a lattice point in basis(); nullopt otherwise.
  std::optional<std::vector<Integer>> coordinates(const RationalVector& x) const {
    check_dim(x);
    auto b = basis();
    auto coeffs = apply_matrix(coefficient_map(b), x);
    std::vector<Integer> out;
    for (const auto& c : coeffs) {
      if (!is_integer(c)) return std::nullopt;
      out.push_back(c.get_num());
    }
    if (combine(b, coeffs) != x) return std::nullopt;
    return out;
  }

  /// Generating set of the dual lattice (A_n and D_n only).
  std::vector<RationalVector> dual_generators() const {
    const std::size_t d = ambient_dim();
    std::vector<RationalVector> g;
    if (family_ == LatticeFamily::An) {
      // p_H(e_i) = e_i - (1/(n+1)) * ones
      for (std::size_t i = 0; i < d; ++i) {
        RationalVector v(d);
        for (std::size_t j = 0; j < d; ++j) v[j] = make_rational(i == j ? static_cast<long>(d) - 1 : -1, static_cast<long>(d));
        g.push_back(v);
      }
    } else if (family_ == LatticeFamily::Dn) {
      g = LatticeSpec::dn(n_).basis();
      RationalVector half(d);
      for (std::size_t j = 0; j < d; ++j) half[j] = Rational(1, 2);
      g.push_back(half);
      g.push_back(unit_vector(d, d - 1));
    } else {
      throw UnsupportedFamily("dual generators are provided for An and Dn only, not " + name());
    }
    for (auto& v : g) v *= Rational(1 / scale_);
    return g;
  }

 private:
  LatticeSpec(LatticeFamily f, int n) : family_(f), n_(n), scale_(1) {}

  LatticeFamily family_;
  int n_;
  Rational scale_;
  std::vector<RationalVector> planar_;
};

namespace detail {

inline void sort_unique(std::vector<RationalVector>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

/// Enumerates integer vectors with coordinates in [-k, k] satisfying a
/// running-sum predicate at the end.
inline void enumerate_int_box(std::size_t dim, long k, const std::function<bool(long)>& accept_sum,
                              const std::function<void(const std::vector<long>&)>& emit,
                              std::optional<long> exact_sum = std::nullopt) {
  std::vector<long> cur(dim, 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long sum) {
    if (i == dim) {
      if (accept_sum(sum)) emit(cur);
      return;
    }
    if (exact_sum) {
      long remaining = static_cast<long>(dim - i - 1);
      for (long v = -k; v <= k; ++v) {
        long need = *exact_sum - sum - v;
        if (need < -k * remaining || need > k * remaining) continue;
        cur[i] = v;
        rec(i + 1, sum + v);
      }
      return;
    }
    for (long v = -k; v <= k; ++v) {
      cur[i] = v;
      rec(i + 1, sum + v);
    }
  };
  rec(0, 0);
}

}  // namespace detail

/// All lattice points with every ambient coordinate in [-R, R], sorted.
inline std::vector<RationalVector> enumerate_in_box(const LatticeSpec& L, const Rational& R) {
  if (R <= 0) throw std::invalid_argument("box radius must be positive");
  std::vector<RationalVector> out;
  const std::size_t d = L.ambient_dim();
  if (L.family() == LatticeFamily::Planar) {
    auto b = L.basis();
    auto m = coefficient_map(b);
    std::vector<long> bound;
    for (const auto& row : m) {
      Rational s = 0;
      for (const auto& x : row) s += abs(x);
      bound.push_back(to_int64(floor_of(s * R)));
    }
    for (long i = -bound[0]; i <= bound[0]; ++i)
      for (long j = -bound[1]; j <= bound[1]; ++j) {
        RationalVector p = Rational(i) * b[0] + Rational(j) * b[1];
        if (sup_extent(p) <= R) out.push_back(std::move(p));
      }
    detail::sort_unique(out);
    return out;
  }
  long k = to_int64(floor_of(R / L.scale()));
  auto emit = [&](const std::vector<long>& v) {
    RationalVector p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = Rational(v[i]) * L.scale();
    out.push_back(std::move(p));
  };
  switch (L.family()) {
    case LatticeFamily::Zn:
      detail::enumerate_int_box(d, k, [](long) { return true; }, emit);
      break;
    case LatticeFamily::An:
      detail::enumerate_int_box(d, k, [](long s) { return s == 0; }, emit, 0L);
      break;
    case LatticeFamily::Dn:
      detail::enumerate_int_box(d, k, [](long s) { return s % 2 == 0; }, emit);
      break;
    default:
      break;
  }
  detail::sort_unique(out);
  return out;
}

namespace detail {

/// Minimizes sum_i (y_i - k_i)^2 over integer vectors k whose per-coordinate
/// candidates are given, subject to a constraint on sum(k): the constraint
/// state is sum(k) reduced by `fold`, and `accept` decides the final state.
/// Returns every minimizer.
inline std::vector<std::vector<Integer>> constrained_nearest(
    const RationalVector& y, const std::vector<std::vector<Integer>>& candidates,
    const std::function<long(long)>& fold, const std::function<bool(long)>& accept) {
  const std::size_t d = y.dim();
  std::vector<std::vector<Rational>> cost(d);
  std::vector<std::vector<long>> delta(d);
  Integer base = 0;
  for (std::size_t i = 0; i < d; ++i) base += candidates[i].front();
  for (std::size_t i = 0; i < d; ++i)
    for (const auto& k : candidates[i]) {
      Rational diff = y[i] - Rational(k);
      cost[i].push_back(diff * diff);
      delta[i].push_back(to_int64(k - candidates[i].front()));
    }
  const long base_state = to_int64(base);
  // best[i][state] = min cost of coordinates i.. given partial state
  std::vector<std::map<long, std::optional<Rational>>> memo(d + 1);
  std::function<std::optional<Rational>(std::size_t, long)> best = [&](std::size_t i, long st) -> std::optional<Rational> {
    if (i == d) return accept(fold(base_state + st)) ? std::optional<Rational>(Rational(0)) : std::nullopt;
    auto it = memo[i].find(st);
    if (it != memo[i].end()) return it->second;
    std::optional<Rational> r;
    for (std::size_t c = 0; c < cost[i].size(); ++c) {
      auto sub = best(i + 1, fold(st + delta[i][c]));
      if (!sub) continue;
      Rational total = cost[i][c] + *sub;
      if (!r || total < *r) r = total;
    }
    memo[i][st] = r;
    return r;
  };
  std::vector<std::vector<Integer>> out;
  auto opt = best(0, 0);
  if (!opt) return out;
  std::vector<Integer> cur(d);
  std::function<void(std::size_t, long, const Rational&)> walk = [&](std::size_t i, long st, const Rational& left) {
    if (i == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t c = 0; c < cost[i].size(); ++c) {
      long ns = fold(st + delta[i][c]);
      auto sub = best(i + 1, ns);
      if (!sub || cost[i][c] + *sub != left) continue;
      cur[i] = candidates[i][c];
      walk(i + 1, ns, left - cost[i][c]);
    }
  };
  walk(0, 0, *opt);
  return out;
}

inline std::vector<Integer> integers_within(const Rational& y, long radius_floor, long radius_ceil) {
  std::vector<Integer> ks;
  Integer lo = floor_of(y) - radius_floor, hi = ceil_of(y) + radius_ceil;
  for (Integer k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

}  // namespace detail

/// Every lattice point at minimal Euclidean distance from x, sorted
/// lexicographically. Ties are returned in full.
inline std::vector<RationalVector> closest_lattice_points(const LatticeSpec& L, const RationalVector& x) {
  L.check_dim(x);
  const std::size_t d = L.ambient_dim();
  std::vector<RationalVector> out;
  if (L.family() == LatticeFamily::Planar) {
    auto [b0, b1] = lagrange_reduce(L.basis()[0], L.basis()[1]);
    auto m = coefficient_map({b0, b1});
    auto c = apply_matrix(m, x);
    Rational best = -1;
    const Rational n00 = norm2(b0);
    for (Integer c1 = floor_of(c[1]) - 2; c1 <= ceil_of(c[1]) + 2; ++c1) {
      RationalVector rest = x - Rational(c1) * b1;
      Rational t = dot(rest, b0) / n00;
      for (Integer c0 = floor_of(t); c0 <= ceil_of(t); ++c0) {
        RationalVector p = Rational(c0) * b0 + Rational(c1) * b1;
        Rational dist = norm2(x - p);
        if (best < 0 || dist < best) {
          best = dist;
          out.clear();
        }
        if (dist == best) out.push_back(std::move(p));
      }
    }
    detail::sort_unique(out);
    return out;
  }
  RationalVector y = x * Rational(1 / L.scale());
  if (L.family() == LatticeFamily::An && coordinate_sum(y) != 0)
    throw InputOffHyperplane("An closest point needs a sum-zero input, got " + x.to_string());
  std::vector<std::vector<Integer>> cand(d);
  std::function<long(long)> fold = [](long s) { return s; };
  std::function<bool(long)> accept = [](long) { return true; };
  for (std::size_t i = 0; i < d; ++i) {
    switch (L.family()) {
      case LatticeFamily::Zn:
      case LatticeFamily::An:
        // Minimizers stay within {floor, ceil} of each coordinate.
        cand[i] = detail::integers_within(y[i], 0, 0);
        break;
      default:
        // D_n: a coordinate off by more than 1 can move 2 closer, same parity.
        cand[i] = detail::integers_within(y[i], 1, 1);
        break;
    }
    cand[i].erase(std::remove_if(cand[i].begin(), cand[i].end(),
                                 [&](const Integer& k) { return abs(y[i] - Rational(k)) > 1; }),
                  cand[i].end());
  }
  if (L.family() == LatticeFamily::An) accept = [](long s) { return s == 0; };
  if (L.family() == LatticeFamily::Dn) {
    fold = [](long s) { return ((s % 2) + 2) % 2; };
    accept = [](long s) { return s == 0; };
  }
  for (const auto& k : detail::constrained_nearest(y, cand, fold, accept)) {
    RationalVector p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = Rational(k[i]) * L.scale();
    out.push_back(std::move(p));
  }
  detail::sort_unique(out);
  return out;
}

}  // namespace parallelo
