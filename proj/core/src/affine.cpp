#include "torus/affine.hpp"

namespace torus {

IntMatrix balanced(const IntMatrix& a, Int m) {
  IntMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = balanced_residue(a(r, c), m);
  return out;
}

AffineTorusAuto AffineTorusAuto::integral(IntMatrix a, RatPoint b) {
  if (!is_unimodular(a)) throw Error("integral affine map needs a unimodular matrix");
  if (b.dim() != a.rows()) throw Error("translation dimension mismatch");
  return AffineTorusAuto(std::move(a), std::move(b), std::nullopt);
}

AffineTorusAuto AffineTorusAuto::modular(const IntMatrix& a, RatPoint b, Int m) {
  if (m < 2) throw Error("modulus must be at least 2");
  if (!a.square() || b.dim() != a.rows()) throw Error("affine map dimension mismatch");
  IntMatrix reduced = balanced(a, m);
  if (gcd(determinant(reduced), m) != 1) throw Error("matrix is not invertible modulo " + std::to_string(m));
  (void)b.grid_residues(m);
  return AffineTorusAuto(std::move(reduced), std::move(b), m);
}

RatPoint AffineTorusAuto::apply(const RatPoint& p) const {
  RatVec x = mul(a_, p.coords());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += b_[i];
  return RatPoint::reduce(std::move(x));
}

IntVec AffineTorusAuto::apply_residues(std::span<const Int> x) const {
  if (!m_) throw Error("apply_residues needs a modular map");
  IntVec y = a_ * x;
  IntVec t = translation_residues();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = mod_floor(checked::add(y[i], t[i]), *m_);
  return y;
}

}  // namespace torus
