#pragma once

#include <optional>
#include <span>

#include "torus/lattice.hpp"
#include "torus/point.hpp"

namespace torus {

/// x -> A x + b on T^n. Either integral (A unimodular, an automorphism of the
/// whole torus) or modulo m (A invertible mod m with balanced-residue entries
/// in (-m/2, m/2], b in G_m), in which case it is only meaningful on G_m.
class AffineTorusAuto {
 public:
  static AffineTorusAuto integral(IntMatrix a, RatPoint b);
  static AffineTorusAuto modular(const IntMatrix& a, RatPoint b, Int m);
  /// Modular map from the translation residues: b = [t / m].
  static AffineTorusAuto modular(const IntMatrix& a, std::span<const Int> t, Int m) {
    return modular(a, RatPoint::from_grid(t, m), m);
  }

  std::size_t dim() const { return a_.rows(); }
  const IntMatrix& matrix() const { return a_; }
  const RatPoint& translation() const { return b_; }
  /// nullopt for integral maps.
  std::optional<Int> modulus() const { return m_; }

  RatPoint apply(const RatPoint& p) const;
  /// On residues of G_m: A x + m b mod m. Requires a modular map.
  IntVec apply_residues(std::span<const Int> x) const;
  /// m * b as residues in [0, m). Requires a modular map.
  IntVec translation_residues() const { return b_.grid_residues(*m_); }

  friend bool operator==(const AffineTorusAuto&, const AffineTorusAuto&) = default;

 private:
  AffineTorusAuto(IntMatrix a, RatPoint b, std::optional<Int> m) : a_(std::move(a)), b_(std::move(b)), m_(m) {}
  IntMatrix a_;
  RatPoint b_;
  std::optional<Int> m_;
};

/// A reduced to balanced residues modulo m.
IntMatrix balanced(const IntMatrix& a, Int m);

}  // namespace torus
