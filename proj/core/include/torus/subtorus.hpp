#pragma once

// Rational subtori: cosets x + (R L)/Z^n for a saturated lattice L.

#include <optional>
#include <span>
#include <vector>

#include "torus/affine.hpp"
#include "torus/geometry.hpp"
#include "torus/lattice.hpp"
#include "torus/point.hpp"

namespace torus {

class RationalSubtorus {
 public:
  /// The lattice must be saturated. The base is stored as given.
  static RationalSubtorus raw(RatPoint base, LatticeBasis lattice);
  static RationalSubtorus from_line(const RationalLine& line);
  /// The rank-0 subtorus {p}. Used for zero-dimensional components.
  static RationalSubtorus point(RatPoint p);

  const RatPoint& base() const { return base_; }
  const LatticeBasis& lattice() const { return lattice_; }
  bool canonical() const { return canonical_; }
  std::size_t dim() const { return lattice_.dim(); }
  std::size_t rank() const { return lattice_.rank(); }
  /// complete_basis(lattice()).
  const UnimodularFrame& frame() const { return frame_; }

  RationalSubtorus canonicalized() const;

  /// Set equality.
  friend bool operator==(const RationalSubtorus& a, const RationalSubtorus& b);

 private:
  RationalSubtorus(RatPoint base, LatticeBasis lattice, UnimodularFrame frame, bool canonical)
      : base_(std::move(base)), lattice_(std::move(lattice)), frame_(std::move(frame)), canonical_(canonical) {}
  RatPoint base_;
  LatticeBasis lattice_;
  UnimodularFrame frame_;
  bool canonical_ = false;
};

struct ComponentDecomposition {
  Int component_count = 0;
  /// Canonical component through the lexicographically least solution point.
  RationalSubtorus representative;
  std::size_t common_dimension = 0;
};

/// Smallest rational subtorus coset through base with tangent lattice
/// saturate(hnf(dirs)). Throws Error when every direction is zero.
RationalSubtorus subtorus_span(const RatPoint& base, std::span<const IntVec> dirs);

bool contains_point(const RationalSubtorus& s, const RatPoint& p);

/// Infinite iff the line lies in s; otherwise the exact number of common points.
IntersectionCount line_subtorus_count(const RationalLine& line, const RationalSubtorus& s);

/// nullopt when the cosets are disjoint. The component count is the index of
/// L1 + L2 inside its saturation.
std::optional<ComponentDecomposition> intersect_subtori(const RationalSubtorus& a, const RationalSubtorus& b);

/// Every point in the (finite) intersection; throws when it is infinite.
std::vector<RatPoint> intersection_points(const RationalSubtorus& a, const RationalSubtorus& b);

/// Image of p in T/U ≅ T^(n-k): the last n-k coordinates of p in the frame of
/// U. The subtorus U must pass through 0.
RatPoint quotient_project(const RatPoint& p, const RationalSubtorus& u);

/// phi(S) with base phi(base) and lattice saturate(A L). Requires an
/// integral map.
RationalSubtorus image_subtorus(const RationalSubtorus& s, const AffineTorusAuto& phi);

}  // namespace torus
