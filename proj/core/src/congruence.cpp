#include "torus/detail/congruence.hpp"

#include <algorithm>

namespace torus::detail {

namespace {

IntMatrix row_block(const IntMatrix& m, std::size_t first_row) {
  IntMatrix out(m.rows() - first_row, m.cols());
  for (std::size_t r = first_row; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r - first_row, c) = m(r, c);
  return out;
}

}  // namespace

RatPoint canonical_base(const RatPoint& x, std::size_t rank, const UnimodularFrame& frame) {
  RatVec c = mul(frame.forward, x.coords());
  for (std::size_t i = 0; i < rank; ++i) c[i] = Rational(0);
  return RatPoint::reduce(mul(frame.inverse, c));
}

CosetIntersection intersect_cosets(const RatPoint& first_base, const LatticeBasis& first,
                                   const RatPoint& second_base, const LatticeBasis& second,
                                   const UnimodularFrame& second_frame) {
  const std::size_t n = first.dim();
  if (second.dim() != n || first_base.dim() != n || second_base.dim() != n)
    throw Error("dimension mismatch in coset intersection");
  const std::size_t k1 = first.rank();

  // A point first_base + B^T s lies in the second coset iff the normal forms
  // of the second frame take integer values on its offset: C s = delta mod Z^r.
  const IntMatrix normals = row_block(second_frame.forward, second.rank());
  const IntMatrix tangent = first.matrix().transposed();
  const IntMatrix c = normals * tangent;
  const RatVec delta = mul(normals, (second_base - first_base).coords());

  const Diagonalization d = diagonalize(c);
  const RatVec eps = mul(d.left, delta);

  CosetIntersection out;
  for (std::size_t i = d.rank; i < eps.size(); ++i)
    if (!eps[i].is_integer()) return out;

  out.empty = false;
  out.dimension = k1 - d.rank;

  // Enumerate u_i = (eps_i + j_i) / d_i for the constrained coordinates.
  std::vector<Int> j(d.rank, 0);
  for (;;) {
    RatVec u(k1, Rational(0));
    for (std::size_t i = 0; i < d.rank; ++i) u[i] = (eps[i] + Rational(j[i])) / Rational(d.diag(i, i));
    RatVec s = mul(d.right, u);
    RatVec x = mul(tangent, s);
    for (std::size_t i = 0; i < n; ++i) x[i] += first_base[i];
    out.points.push_back(RatPoint::reduce(std::move(x)));

    std::size_t pos = 0;
    while (pos < d.rank && ++j[pos] == d.diag(pos, pos)) j[pos++] = 0;
    if (pos == d.rank) break;
  }
  std::sort(out.points.begin(), out.points.end());

  std::vector<IntVec> dirs;
  for (std::size_t i = d.rank; i < k1; ++i) dirs.push_back(tangent * d.right.column(i));
  out.common = saturate(hnf(n, dirs));
  return out;
}

}  // namespace torus::detail
