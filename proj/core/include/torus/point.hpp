#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "torus/lattice.hpp"
#include "torus/rational.hpp"

namespace torus {

/// A point of Q^n/Z^n; every coordinate is kept reduced into [0, 1).
class RatPoint {
 public:
  RatPoint() = default;

  static RatPoint reduce(RatVec coords);
  static RatPoint origin(std::size_t n) { return RatPoint(RatVec(n, Rational(0))); }
  /// The grid point [x / m] for integer residues x.
  static RatPoint from_grid(std::span<const Int> x, Int m);

  std::size_t dim() const { return c_.size(); }
  const RatVec& coords() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }

  /// Least m such that the point lies in the grid (1/m)Z^n/Z^n.
  Int denominator() const { return common_denominator(c_); }
  /// Residues x with point == [x / m]; throws if the point is not in G_m.
  IntVec grid_residues(Int m) const;

  friend RatPoint operator+(const RatPoint& a, const RatPoint& b);
  friend RatPoint operator-(const RatPoint& a, const RatPoint& b);
  RatPoint operator-() const;

  friend bool operator==(const RatPoint&, const RatPoint&) = default;
  friend auto operator<=>(const RatPoint& a, const RatPoint& b) { return a.c_ <=> b.c_; }

  /// "(1/2, 0)".
  std::string to_string() const;

 private:
  explicit RatPoint(RatVec c) : c_(std::move(c)) {}
  RatVec c_;
};

/// Exact product of an integer matrix with a rational vector (no reduction).
RatVec mul(const IntMatrix& m, const RatVec& v);

}  // namespace torus
