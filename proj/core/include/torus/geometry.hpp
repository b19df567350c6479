#pragma once

// Rational lines on the torus T^n = R^n/Z^n: membership, intersection
// numbers, parallelism, grid traces, and blocks in T^2.

#include <optional>
#include <string>
#include <vector>

#include "torus/lattice.hpp"
#include "torus/point.hpp"

namespace torus {

/// |l1 ∩ l2| or |l ∩ S|: either an exact finite number or infinite.
class IntersectionCount {
 public:
  static IntersectionCount finite(Int k) { return IntersectionCount(k); }
  static IntersectionCount infinite() { return IntersectionCount(-1); }

  bool is_infinite() const { return k_ < 0; }
  bool is_finite() const { return k_ >= 0; }
  /// Throws if infinite.
  Int value() const;

  friend bool operator==(const IntersectionCount&, const IntersectionCount&) = default;
  std::string to_string() const { return is_infinite() ? "infinite" : std::to_string(k_); }

 private:
  explicit IntersectionCount(Int k) : k_(k) {}
  Int k_;
};

/// Coset base + R dir of a closed circle subgroup. Canonical lines carry the
/// distinguished base point, so two canonical lines are equal as sets iff they
/// have the same representation.
class RationalLine {
 public:
  /// Stores the data as given, without canonicalizing the base.
  static RationalLine raw(RatPoint base, PrimVec dir);

  const RatPoint& base() const { return base_; }
  const PrimVec& dir() const { return dir_; }
  bool canonical() const { return canonical_; }
  std::size_t dim() const { return dir_.size(); }

  RationalLine canonicalized() const;
  /// base + t * dir, reduced.
  RatPoint point_at(const Rational& t) const;
  /// Rank-1 tangent lattice spanned by dir.
  LatticeBasis tangent() const;

  /// Set equality.
  friend bool operator==(const RationalLine& a, const RationalLine& b);

  /// "dir (2, 3) base (0, 1/2)".
  std::string to_string() const;

 private:
  RationalLine(RatPoint base, PrimVec dir, bool canonical)
      : base_(std::move(base)), dir_(std::move(dir)), canonical_(canonical) {}
  RatPoint base_;
  PrimVec dir_;
  bool canonical_ = false;
};

/// Canonical line through p with direction primitive_part(d).
RationalLine line_through(const RatPoint& p, std::span<const Int> d);

bool contains(const RationalLine& line, const RatPoint& p);

/// Lines of T^2. Non-parallel: |det(dir1, dir2)|; parallel: infinite when the
/// lines coincide, otherwise 0.
IntersectionCount intersection_count_2d(const RationalLine& a, const RationalLine& b);

/// Exact, sorted, duplicate-free intersection in T^n. Throws Error
/// ("infinite intersection") when the lines are equal as sets.
std::vector<RatPoint> intersection_points(const RationalLine& a, const RationalLine& b);

/// dir1 == ±dir2.
bool are_parallel(const RationalLine& a, const RationalLine& b);

/// Intersection count with the coordinate hyperplane {x_axis = 0}.
/// The axis is zero-based.
IntersectionCount line_hyperplane_count(const RationalLine& line, std::size_t axis);

/// The trace of the line on the grid G_m = (1/m)Z^n/Z^n: ordered by the
/// parameter along dir starting from the first grid point, so when the base
/// lies in G_m it is {base + (k/m) dir : 0 <= k < m}.
std::vector<RatPoint> line_grid_points(const RationalLine& line, Int m);

/// Reflection (x, y) -> (x, -y) of a line in T^2.
RationalLine reflect_x(const RationalLine& line);

/// Four points of T^2 form a block if some labeling P, Q, R, S puts P, Q on a
/// horizontal line, R, S on a horizontal line, P, R and Q, S on vertical lines,
/// P, S on a slope-1 line and Q, R on a slope-(-1) line. Repeated points: false.
bool is_block(const RatPoint& p1, const RatPoint& p2, const RatPoint& p3, const RatPoint& p4);

/// x1 - x0 == ±(y1 - y0) in Q/Z. Requires x0 != x1 and y0 != y1 in Q/Z.
bool block_criterion(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1);

}  // namespace torus
