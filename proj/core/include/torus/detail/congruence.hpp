#pragma once

// Intersection of two cosets x + (R L) / Z^n of rational subtori, where each
// lattice L is saturated. Shared by the line and subtorus modules.

#include <vector>

#include "torus/lattice.hpp"
#include "torus/point.hpp"

namespace torus::detail {

struct CosetIntersection {
  bool empty = true;
  /// Dimension of each component (rank of the common tangent lattice).
  std::size_t dimension = 0;
  /// One point per component, sorted lexicographically. Each point is the
  /// solution with all free coordinates set to zero.
  std::vector<RatPoint> points;
  /// Saturated tangent lattice shared by every component.
  LatticeBasis common;
};

/// `second_frame` must be complete_basis(second).
CosetIntersection intersect_cosets(const RatPoint& first_base, const LatticeBasis& first,
                                   const RatPoint& second_base, const LatticeBasis& second,
                                   const UnimodularFrame& second_frame);

/// Base point of the coset x + (R L) chosen canonically: coordinates along L
/// in the frame's basis are set to zero.
RatPoint canonical_base(const RatPoint& x, std::size_t rank, const UnimodularFrame& frame);

}  // namespace torus::detail
