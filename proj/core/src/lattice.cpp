#include "torus/lattice.hpp"

#include <algorithm>
#include <ostream>
#include <utility>

namespace torus {

// IntMatrix -----------------------------------------------------------------

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVec> rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error("row length does not match matrix width");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const IntVec> columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error("column length does not match matrix height");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Int> entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntVec IntMatrix::row(std::size_t r) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVec IntMatrix::column(std::size_t c) const {
  IntVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error("matrix product dimension mismatch");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      Int aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) = checked::add(p(i, j), checked::mul(aik, b(k, j)));
    }
  return p;
}

IntVec IntMatrix::operator*(std::span<const Int> v) const {
  if (v.size() != cols_) throw Error("matrix-vector dimension mismatch");
  IntVec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] = checked::add(out[i], checked::mul((*this)(i, j), v[j]));
  return out;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  return os;
}

// Primitive vectors ----------------------------------------------------------

PrimitivePart primitive_part(std::span<const Int> v) {
  Int g = 0;
  for (Int x : v) g = gcd(g, x);
  if (g == 0) throw Error("no direction: zero vector");
  IntVec p(v.begin(), v.end());
  auto first = std::find_if(p.begin(), p.end(), [](Int x) { return x != 0; });
  Int sign = *first < 0 ? -1 : 1;
  for (Int& x : p) x = checked::mul(sign, x / g);
  return {PrimVec(std::move(p)), g};
}

PrimVec PrimVec::checked(IntVec v) {
  auto part = primitive_part(v);
  if (part.content != 1 || part.prim.entries() != v)
    throw Error("vector is not primitive with canonical sign");
  return part.prim;
}

// Row echelon reduction -------------------------------------------------------

namespace {

// Applies unimodular row operations to `h`, mirrored on `left` (same rows) and
// on `left_inv` (inverse operation on columns).
struct RowReducer {
  IntMatrix& h;
  IntMatrix& left;
  IntMatrix& left_inv;

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < h.cols(); ++c) std::swap(h(i, c), h(j, c));
    for (std::size_t c = 0; c < left.cols(); ++c) std::swap(left(i, c), left(j, c));
    for (std::size_t r = 0; r < left_inv.rows(); ++r) std::swap(left_inv(r, i), left_inv(r, j));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < h.cols(); ++c) h(i, c) = checked::neg(h(i, c));
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = checked::neg(left(i, c));
    for (std::size_t r = 0; r < left_inv.rows(); ++r) left_inv(r, i) = checked::neg(left_inv(r, i));
  }

  // row_i += q * row_j
  void add_multiple(std::size_t i, std::size_t j, Int q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < h.cols(); ++c) h(i, c) = checked::add(h(i, c), checked::mul(q, h(j, c)));
    for (std::size_t c = 0; c < left.cols(); ++c) left(i, c) = checked::add(left(i, c), checked::mul(q, left(j, c)));
    for (std::size_t r = 0; r < left_inv.rows(); ++r)
      left_inv(r, j) = checked::sub(left_inv(r, j), checked::mul(q, left_inv(r, i)));
  }

  // Moves gcd(h(i,col), h(j,col)) into row i and zeroes h(j,col).
  void combine(std::size_t i, std::size_t j, std::size_t col) {
    Int x = h(i, col);
    Int y = h(j, col);
    if (y == 0) return;
    if (x == 0) {
      swap_rows(i, j);
      return;
    }
    if (y % x == 0) {
      add_multiple(j, i, checked::neg(y / x));
      return;
    }
    auto [g, s, t] = extended_gcd(x, y);
    Int xg = x / g;
    Int yg = y / g;
    // [row_i; row_j] <- [[s, t], [-y/g, x/g]] [row_i; row_j]
    auto mix = [&](IntMatrix& m) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        Int a = m(i, c);
        Int b = m(j, c);
        m(i, c) = checked::mul_add(s, a, t, b);
        m(j, c) = checked::mul_add(checked::neg(yg), a, xg, b);
      }
    };
    mix(h);
    mix(left);
    // inverse [[x/g, -t], [y/g, s]] applied on the right
    for (std::size_t r = 0; r < left_inv.rows(); ++r) {
      Int a = left_inv(r, i);
      Int b = left_inv(r, j);
      left_inv(r, i) = checked::mul_add(a, xg, b, yg);
      left_inv(r, j) = checked::mul_add(a, checked::neg(t), b, s);
    }
  }
};

bool is_diagonal(const IntMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (r != c && m(r, c) != 0) return false;
  return true;
}

}  // namespace

Echelon row_echelon(const IntMatrix& m) {
  Echelon e{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()), 0};
  RowReducer red{e.echelon, e.left, e.left_inverse};
  IntMatrix& h = e.echelon;
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols() && row < h.rows(); ++col) {
    for (std::size_t i = row + 1; i < h.rows(); ++i) red.combine(row, i, col);
    if (h(row, col) == 0) continue;
    if (h(row, col) < 0) red.negate_row(row);
    for (std::size_t i = 0; i < row; ++i) red.add_multiple(i, row, checked::neg(floor_div(h(i, col), h(row, col))));
    ++row;
  }
  e.rank = row;
  return e;
}

// Lattices ------------------------------------------------------------------------

std::vector<std::size_t> LatticeBasis::pivots() const {
  std::vector<std::size_t> p;
  p.reserve(rows_.size());
  for (const auto& r : rows_) {
    auto it = std::find_if(r.begin(), r.end(), [](Int x) { return x != 0; });
    p.push_back(static_cast<std::size_t>(it - r.begin()));
  }
  return p;
}

IntMatrix LatticeBasis::matrix() const { return IntMatrix::from_rows(rows_, dim_); }

LatticeBasis hnf(std::size_t dim, std::span<const IntVec> vectors) {
  LatticeBasis out;
  out.dim_ = dim;
  if (vectors.empty()) {
    out.saturated_ = true;
    return out;
  }
  Echelon e = row_echelon(IntMatrix::from_rows(vectors, dim));
  for (std::size_t r = 0; r < e.rank; ++r) out.rows_.push_back(e.echelon.row(r));
  const auto inv = out.rows_.empty() ? std::vector<Int>{} : smith_invariants(out.matrix());
  out.saturated_ = std::all_of(inv.begin(), inv.end(), [](Int d) { return d == 1; });
  return out;
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
  Echelon e = row_echelon(m.transposed());
  std::vector<IntVec> kernel;
  for (std::size_t r = e.rank; r < e.left.rows(); ++r) kernel.push_back(e.left.row(r));
  return kernel;
}

LatticeBasis saturate(const LatticeBasis& lattice) {
  const std::size_t n = lattice.dim();
  const std::size_t k = lattice.rank();
  LatticeBasis out;
  if (k == 0 || lattice.saturated()) {
    out = lattice;
  } else if (k == n) {
    IntMatrix id = IntMatrix::identity(n);
    std::vector<IntVec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(id.row(i));
    out = hnf(n, rows);
  } else {
    auto normals = integer_kernel(lattice.matrix());
    auto sat = integer_kernel(IntMatrix::from_rows(normals, n));
    out = hnf(n, sat);
  }
  out.saturated_ = true;
  return out;
}

bool lattice_contains(const LatticeBasis& lattice, std::span<const Int> v) {
  if (v.size() != lattice.dim()) throw Error("dimension mismatch in lattice membership");
  IntVec rest(v.begin(), v.end());
  const auto piv = lattice.pivots();
  for (std::size_t j = 0; j < lattice.rank(); ++j) {
    const auto& b = lattice.basis()[j];
    Int p = b[piv[j]];
    if (rest[piv[j]] % p != 0) return false;
    Int q = rest[piv[j]] / p;
    for (std::size_t c = 0; c < rest.size(); ++c) rest[c] = checked::sub(rest[c], checked::mul(q, b[c]));
  }
  return std::all_of(rest.begin(), rest.end(), [](Int x) { return x == 0; });
}

Int determinant(const IntMatrix& m) {
  if (!m.square()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = checked::sub(checked::mul(a(i, j), a(k, k)), checked::mul(a(i, k), a(k, j))) / prev;
    prev = a(k, k);
  }
  return checked::mul(sign, a(n - 1, n - 1));
}

bool is_unimodular(const IntMatrix& m) {
  if (!m.square()) return false;
  Int d = determinant(m);
  return d == 1 || d == -1;
}

IntMatrix complete_to_unimodular(const PrimVec& v) {
  Echelon e = row_echelon(IntMatrix::from_columns(std::span<const IntVec>(&v.entries(), 1), v.size()));
  return e.left_inverse;
}

UnimodularFrame complete_basis(const LatticeBasis& lattice) {
  const std::size_t n = lattice.dim();
  const std::size_t k = lattice.rank();
  Echelon e = row_echelon(lattice.matrix().transposed());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (e.echelon(r, c) != (r == c ? 1 : 0)) throw Error("complete_basis requires a saturated lattice");
  return {std::move(e.left), std::move(e.left_inverse)};
}

Diagonalization diagonalize(const IntMatrix& m) {
  Diagonalization d{IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()),
                    IntMatrix::identity(m.cols()), m, 0};
  for (int round = 0;; ++round) {
    if (round > 256) throw Error("diagonalization did not converge");
    Echelon rows = row_echelon(d.diag);
    d.diag = std::move(rows.echelon);
    d.left = rows.left * d.left;
    d.left_inverse = d.left_inverse * rows.left_inverse;
    if (is_diagonal(d.diag)) break;
    Echelon cols = row_echelon(d.diag.transposed());
    d.diag = cols.echelon.transposed();
    d.right = d.right * cols.left.transposed();
    if (is_diagonal(d.diag)) break;
  }
  const std::size_t lim = std::min(d.diag.rows(), d.diag.cols());
  while (d.rank < lim && d.diag(d.rank, d.rank) != 0) ++d.rank;
  return d;
}

std::vector<Int> smith_invariants(const IntMatrix& m) {
  Diagonalization d = diagonalize(m);
  std::vector<Int> inv;
  for (std::size_t i = 0; i < d.rank; ++i) inv.push_back(d.diag(i, i));
  for (std::size_t i = 0; i < inv.size(); ++i)
    for (std::size_t j = i + 1; j < inv.size(); ++j) {
      Int g = gcd(inv[i], inv[j]);
      Int l = checked::mul(inv[i] / g, inv[j]);
      inv[i] = g;
      inv[j] = l;
    }
  return inv;
}

}  // namespace torus
