#pragma once

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "torus/checked.hpp"

namespace torus {

/// Exact rational number in lowest terms with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Int value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(Int num, Int den);

  Int num() const { return num_; }
  Int den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  Int floor() const { return floor_div(num_, den_); }
  /// Representative of the class in R/Z lying in [0, 1).
  Rational frac() const;

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  /// "p/q", or "p" when the denominator is 1.
  std::string to_string() const;
  /// Accepts "p", "-p", "p/q" with q > 0. Throws Error on anything else.
  static Rational parse(std::string_view token);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

using RatVec = std::vector<Rational>;

/// Least common multiple of the denominators; 1 for an empty vector.
Int common_denominator(const RatVec& v);

}  // namespace torus
