#pragma once

// Recovering an affine map from a bijection of G_m, or certifying that no
// affine map (indeed no collineation) agrees with it.

#include <array>
#include <optional>
#include <span>
#include <variant>

#include "torus/affine.hpp"
#include "torus/discrete.hpp"

namespace torus {

/// A discrete line whose image is not a discrete line. When present, the
/// triple lists three points of the line (ascending) whose images lie on no
/// common discrete line. For prime m a triple always exists.
struct Witness {
  DiscreteLine line;
  std::optional<std::array<PointIndex, 3>> triple;
};

/// Outcome for composite m only: every discrete line maps onto a discrete
/// line, yet no affine map mod m agrees with f.
struct LinePreservingNonAffine {};

using Inference = std::variant<AffineTorusAuto, Witness, LinePreservingNonAffine>;

struct TranslationSplit {
  GridMap linear;  // x -> f(x) - f(0)
  RatPoint translation;  // f(0)
};

TranslationSplit normalize_translation(const GridMap& f);

/// Raised by image_direction when the images of a line through 0 are not a
/// cyclic subgroup of order m.
class CollinearityError : public Error {
 public:
  CollinearityError(const std::string& what, std::optional<std::array<PointIndex, 3>> triple)
      : Error(what), triple_(triple) {}
  const std::optional<std::array<PointIndex, 3>>& triple() const { return triple_; }

 private:
  std::optional<std::array<PointIndex, 3>> triple_;
};

/// Image direction of the line through 0 spanned by the residues d, as
/// balanced residues with first nonzero entry positive. This is g(d) itself
/// whenever g(d) generates the image subgroup, and otherwise the least
/// generator. Requires g(0) == 0 and gcd(d, m) == 1.
IntVec image_direction(const GridMap& g, std::span<const Int> d);

/// The affine map agreeing with f on G_m, a Witness, or (composite m only)
/// LinePreservingNonAffine. Throws Error("modulus too small") for m < 3.
Inference infer_affine(const GridMap& f);

/// nullopt iff f maps every discrete line onto a discrete line. Otherwise the
/// first violation in scan order (lines through 0 first, then by least point),
/// independent of `workers`.
std::optional<Witness> verify_line_preserving(const GridMap& f, std::size_t workers = 1);

/// Checks a witness against f by exhaustive scan over all discrete lines.
bool validate_witness(const GridMap& f, const Witness& w);

struct PropertyReport {
  bool parallels_preserved = true;
  std::size_t parallel_classes_checked = 0;
  /// n == 2 only.
  std::optional<bool> blocks_preserved;
  std::size_t blocks_checked = 0;
  /// n >= 3 only: cosets of free rank-k summands, 2 <= k < n.
  std::optional<bool> subtori_preserved;
  std::size_t subtori_checked = 0;

  bool all() const {
    return parallels_preserved && blocks_preserved.value_or(true) && subtori_preserved.value_or(true);
  }
};

/// Requires f to be line preserving; throws Error otherwise.
PropertyReport check_incidence_properties(const GridMap& f);

}  // namespace torus
