#pragma once

// Integer vectors, matrices and lattices: the exact arithmetic underneath
// all of the torus geometry.
//
// Lattices are stored by a row basis in Hermite normal form. The convention
// is echelon with respect to coordinates: basis vector j has its pivot (first
// nonzero entry) strictly to the right of the pivot of vector j-1, every pivot
// is positive, and the entries of earlier vectors in a later pivot column lie
// in [0, pivot). This form is unique per lattice.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "torus/checked.hpp"

namespace torus {

using IntVec = std::vector<Int>;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::span<const IntVec> rows, std::size_t cols);
  static IntMatrix from_columns(std::span<const IntVec> columns, std::size_t rows);
  static IntMatrix diagonal(std::span<const Int> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVec row(std::size_t r) const;
  IntVec column(std::size_t c) const;
  IntMatrix transposed() const;

  /// Checked matrix product.
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  /// Checked matrix-vector product.
  IntVec operator*(std::span<const Int> v) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

struct PrimitivePart;

/// Primitive integer vector: entries have gcd 1 and the first nonzero entry is
/// positive. Only constructible through primitive_part or PrimVec::checked.
class PrimVec {
 public:
  /// Validates that v already satisfies the invariants; throws Error otherwise.
  static PrimVec checked(IntVec v);

  const IntVec& entries() const { return v_; }
  std::size_t size() const { return v_.size(); }
  Int operator[](std::size_t i) const { return v_[i]; }

  friend bool operator==(const PrimVec&, const PrimVec&) = default;
  friend auto operator<=>(const PrimVec&, const PrimVec&) = default;

 private:
  explicit PrimVec(IntVec v) : v_(std::move(v)) {}
  friend PrimitivePart primitive_part(std::span<const Int> v);
  IntVec v_;
};

struct PrimitivePart {
  PrimVec prim;
  Int content;  // positive; v == content * prim up to the sign rule
};

/// v = sign * content * prim, where sign makes prim's first nonzero entry
/// positive. Throws Error("no direction") for the zero vector.
PrimitivePart primitive_part(std::span<const Int> v);

/// Sublattice of Z^n given by a basis in Hermite normal form.
class LatticeBasis {
 public:
  LatticeBasis() = default;

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<IntVec>& basis() const { return rows_; }
  bool saturated() const { return saturated_; }
  /// Column index of the pivot of each basis vector.
  std::vector<std::size_t> pivots() const;
  /// rank x dim matrix whose rows are the basis vectors.
  IntMatrix matrix() const;

  friend bool operator==(const LatticeBasis& a, const LatticeBasis& b) {
    return a.dim_ == b.dim_ && a.rows_ == b.rows_;
  }

 private:
  friend LatticeBasis hnf(std::size_t dim, std::span<const IntVec> vectors);
  friend LatticeBasis saturate(const LatticeBasis& lattice);
  std::size_t dim_ = 0;
  std::vector<IntVec> rows_;
  bool saturated_ = false;
};

/// Hermite normal form of the integer span of `vectors` (each of length dim).
/// An all-zero or empty input yields the rank-0 lattice.
LatticeBasis hnf(std::size_t dim, std::span<const IntVec> vectors);
inline LatticeBasis hnf(std::span<const IntVec> vectors) {
  if (vectors.empty()) throw Error("hnf of an empty vector list needs an explicit dimension");
  return hnf(vectors.front().size(), vectors);
}

/// (R-span of L) intersected with Z^n, in Hermite normal form.
LatticeBasis saturate(const LatticeBasis& lattice);

/// True iff v lies in the lattice.
bool lattice_contains(const LatticeBasis& lattice, std::span<const Int> v);

/// Exact determinant (fraction-free elimination, checked arithmetic).
Int determinant(const IntMatrix& m);

/// True iff m is square with determinant +1 or -1.
bool is_unimodular(const IntMatrix& m);

/// Unimodular matrix whose first column is v. Deterministic; the identity when
/// v is the first standard basis vector.
IntMatrix complete_to_unimodular(const PrimVec& v);

/// A unimodular change of coordinates adapted to a saturated lattice: the
/// first rank() columns of `inverse` are the basis vectors, and
/// forward * inverse == identity. Row i >= rank() of `forward` is a linear
/// form vanishing on the lattice.
struct UnimodularFrame {
  IntMatrix forward;
  IntMatrix inverse;
};

/// Requires a saturated lattice (throws Error otherwise).
UnimodularFrame complete_basis(const LatticeBasis& lattice);

/// Basis (as rows) of {x in Z^cols : m x = 0}. The result is saturated.
std::vector<IntVec> integer_kernel(const IntMatrix& m);

/// Diagonal reduction left * m * right = diag, left and right unimodular.
/// Only the first `rank` diagonal entries are nonzero, and they are positive.
/// The entries do not necessarily form a divisor chain.
struct Diagonalization {
  IntMatrix left;
  IntMatrix left_inverse;
  IntMatrix right;
  IntMatrix diag;
  std::size_t rank = 0;
};

Diagonalization diagonalize(const IntMatrix& m);

/// Nonzero Smith invariants d1 | d2 | ... of m.
std::vector<Int> smith_invariants(const IntMatrix& m);

/// Row echelon reduction with transform: left * m == echelon, with `left`
/// unimodular and `left_inverse` its inverse. `echelon` is in Hermite normal
/// form (rows past `rank` are zero).
struct Echelon {
  IntMatrix echelon;
  IntMatrix left;
  IntMatrix left_inverse;
  std::size_t rank = 0;
};

Echelon row_echelon(const IntMatrix& m);

}  // namespace torus
