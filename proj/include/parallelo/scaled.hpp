#pragma once

// Points stored as integer coordinates over a shared positive scale. Graph
// vertex sets live here so hot loops never touch arbitrary-precision numbers.

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "parallelo/errors.hpp"
#include "parallelo/vector.hpp"

namespace parallelo {

using IntVec = std::vector<std::int64_t>;

struct IntVecHash {
  std::size_t operator()(const IntVec& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

inline IntVec operator+(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec negated(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline std::int64_t sup_extent(const IntVec& a) {
  std::int64_t m = 0;
  for (auto x : a) m = std::max(m, x < 0 ? -x : x);
  return m;
}

/// Exact conversion of a rational point to the integer grid of `scale`;
/// throws if the point is not on that grid.
inline IntVec to_scaled(const RationalVector& v, std::int64_t scale) {
  IntVec r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    Rational t = v[i] * scale;
    if (!is_integer(t))
      throw DimensionMismatch("point " + v.to_string() + " is not on the 1/" + std::to_string(scale) +
                              " grid");
    r[i] = to_int64(t.get_num());
  }
  return r;
}

inline std::int64_t lcm_scale(std::int64_t a, const Integer& b) {
  Integer l;
  Integer ai(static_cast<long>(a));
  mpz_lcm(l.get_mpz_t(), ai.get_mpz_t(), b.get_mpz_t());
  return to_int64(l);
}

/// Smallest scale putting every point on an integer grid.
inline std::int64_t grid_scale(const std::vector<RationalVector>& points) {
  std::int64_t s = 1;
  for (const auto& p : points) s = lcm_scale(s, common_denominator(p));
  return s;
}

/// Index lookup over a fixed list of scaled points.
class PointIndex {
 public:
  PointIndex() = default;
  explicit PointIndex(const std::vector<IntVec>& points) {
    map_.reserve(points.size() * 2);
    for (std::size_t i = 0; i < points.size(); ++i) map_.emplace(points[i], static_cast<int>(i));
  }
  int find(const IntVec& p) const {
    auto it = map_.find(p);
    return it == map_.end() ? -1 : it->second;
  }
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<IntVec, int, IntVecHash> map_;
};

}  // namespace parallelo
