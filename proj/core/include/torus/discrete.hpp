#pragma once

// The discrete torus (Z/m)^n = G_m and its lines: cosets of cyclic subgroups
// of order m whose generators a satisfy gcd(a_1, ..., a_n, m) = 1. These are
// exactly the traces of rational lines on G_m.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "torus/lattice.hpp"

namespace torus {

using PointIndex = std::uint32_t;

/// Index arithmetic on (Z/m)^n. Points are numbered lexicographically with
/// the first coordinate most significant.
class Grid {
 public:
  Grid(std::size_t n, Int m);

  std::size_t dim() const { return n_; }
  Int modulus() const { return m_; }
  PointIndex size() const { return size_; }

  IntVec point(PointIndex i) const;
  /// Reduces x modulo m first.
  PointIndex index(std::span<const Int> x) const;
  PointIndex add(PointIndex a, PointIndex b) const;
  PointIndex sub(PointIndex a, PointIndex b) const;
  PointIndex scale(Int k, PointIndex a) const;
  PointIndex unit(std::size_t axis) const;
  /// gcd(x_1, ..., x_n, m) == 1.
  bool is_unit(PointIndex a) const;

 private:
  std::size_t n_;
  Int m_;
  PointIndex size_;
};

/// Fixed-size bitset over points or line indices.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  std::size_t count() const;
  bool none() const;
  bool is_subset_of(const Bitset& o) const;
  Bitset& operator&=(const Bitset& o);
  Bitset& operator|=(const Bitset& o);
  const std::vector<std::uint64_t>& words() const { return words_; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const;
};

struct DiscreteLine {
  /// Lexicographically least point of the line.
  PointIndex base = 0;
  /// Least-indexed generator of the cyclic subgroup.
  PointIndex generator = 0;
  /// Index of the subgroup (direction class) among all line directions.
  std::size_t direction = 0;
  /// The m points, ascending.
  std::vector<PointIndex> points;
};

/// All discrete lines of (Z/m)^n with per-point incidence and per-line masks.
/// Lines are sorted by (base, generator), so lines through 0 come first.
class IncidenceStructure {
 public:
  IncidenceStructure(std::size_t n, Int m);

  /// Process-wide cached instance.
  static std::shared_ptr<const IncidenceStructure> shared(std::size_t n, Int m);

  const Grid& grid() const { return grid_; }
  const std::vector<DiscreteLine>& lines() const { return lines_; }
  std::size_t direction_count() const { return direction_generators_.size(); }
  /// Canonical generator of each direction class.
  const std::vector<PointIndex>& direction_generators() const { return direction_generators_; }
  std::span<const std::uint32_t> lines_through(PointIndex p) const { return point_lines_[p]; }
  const Bitset& line_mask(std::size_t line) const { return masks_[line]; }

  /// Index of the line whose point set equals `points` (any order).
  std::optional<std::size_t> find_line(std::span<const PointIndex> points) const;
  /// Some line contains every given point.
  bool collinear(std::span<const PointIndex> points) const;

 private:
  Grid grid_;
  std::vector<DiscreteLine> lines_;
  std::vector<PointIndex> direction_generators_;
  std::vector<std::vector<std::uint32_t>> point_lines_;
  std::vector<std::vector<std::uint32_t>> lines_by_base_;
  std::vector<Bitset> masks_;
};

/// Complete, duplicate-free list of discrete lines. Requires n >= 2, m >= 3.
std::vector<DiscreteLine> enumerate_discrete_lines(std::size_t n, Int m);

/// A primitive integer vector congruent to the residues a modulo m.
/// Requires gcd(a, m) == 1.
IntVec primitive_lift(std::span<const Int> a, Int m);

/// A bijection of G_m, stored as the image index of every point.
class GridMap {
 public:
  /// Validates n >= 2, m >= 3 and that `image` is a permutation.
  GridMap(std::size_t n, Int m, std::vector<PointIndex> image);
  static GridMap identity(std::size_t n, Int m);

  std::size_t dim() const { return grid_.dim(); }
  Int modulus() const { return grid_.modulus(); }
  const Grid& grid() const { return grid_; }
  PointIndex operator()(PointIndex p) const { return image_[p]; }
  const std::vector<PointIndex>& images() const { return image_; }

  friend bool operator==(const GridMap& a, const GridMap& b) {
    return a.dim() == b.dim() && a.modulus() == b.modulus() && a.image_ == b.image_;
  }

 private:
  Grid grid_;
  std::vector<PointIndex> image_;
};

}  // namespace torus
