#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "parallelo/errors.hpp"
#include "parallelo/rational.hpp"

namespace parallelo {

/// A point of R^n with exact rational coordinates.
class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(std::size_t dim) : c_(dim, Rational(0)) {}
  explicit RationalVector(std::vector<Rational> components) : c_(std::move(components)) {}
  RationalVector(std::initializer_list<Rational> components) : c_(components) {}

  static RationalVector from_ints(std::initializer_list<long> values) {
    RationalVector v(values.size());
    std::size_t i = 0;
    for (long x : values) v.c_[i++] = x;
    return v;
  }

  /// Interprets integer coordinates divided by a common positive scale.
  static RationalVector from_scaled(const std::vector<std::int64_t>& coords, std::int64_t scale) {
    RationalVector v(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
      v.c_[i] = make_rational(static_cast<long>(coords[i]), static_cast<long>(scale));
    return v;
  }

  std::size_t dim() const { return c_.size(); }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  const std::vector<Rational>& components() const { return c_; }

  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x == 0; });
  }

  RationalVector& operator+=(const RationalVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  RationalVector& operator-=(const RationalVector& o) {
    check_dim(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  RationalVector& operator*=(const Rational& t) {
    for (auto& x : c_) x *= t;
    return *this;
  }

  friend RationalVector operator+(RationalVector a, const RationalVector& b) { return a += b; }
  friend RationalVector operator-(RationalVector a, const RationalVector& b) { return a -= b; }
  friend RationalVector operator-(RationalVector a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend RationalVector operator*(const Rational& t, RationalVector a) { return a *= t; }
  friend RationalVector operator*(RationalVector a, const Rational& t) { return a *= t; }

  friend bool operator==(const RationalVector& a, const RationalVector& b) { return a.c_ == b.c_; }

  /// Lexicographic order on coordinates (shorter vectors first).
  friend bool operator<(const RationalVector& a, const RationalVector& b) {
    return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ",";
      s += c_[i].get_str();
    }
    return s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalVector& v) { return os << v.to_string(); }

 private:
  void check_dim(const RationalVector& o) const {
    if (o.dim() != dim())
      throw DimensionMismatch("vector dimensions differ: " + std::to_string(dim()) + " vs " +
                              std::to_string(o.dim()));
  }

  std::vector<Rational> c_;
};

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("dot: dimensions differ");
  Rational s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational norm2(const RationalVector& a) { return dot(a, a); }

inline Rational coordinate_sum(const RationalVector& a) {
  Rational s = 0;
  for (const auto& x : a) s += x;
  return s;
}

/// Largest absolute coordinate.
inline Rational sup_extent(const RationalVector& a) {
  Rational m = 0;
  for (const auto& x : a) m = std::max(m, abs(x));
  return m;
}

inline RationalVector unit_vector(std::size_t dim, std::size_t i) {
  RationalVector e(dim);
  e[i] = 1;
  return e;
}

/// Least common multiple of all coordinate denominators.
inline Integer common_denominator(const RationalVector& v) {
  Integer d = 1;
  for (const auto& x : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

}  // namespace parallelo
