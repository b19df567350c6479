#include "torus/point.hpp"

namespace torus {

RatPoint RatPoint::reduce(RatVec coords) {
  for (auto& x : coords) x = x.frac();
  return RatPoint(std::move(coords));
}

RatPoint RatPoint::from_grid(std::span<const Int> x, Int m) {
  if (m <= 0) throw Error("grid modulus must be positive");
  RatVec c;
  c.reserve(x.size());
  for (Int xi : x) c.emplace_back(mod_floor(xi, m), m);
  return RatPoint(std::move(c));
}

IntVec RatPoint::grid_residues(Int m) const {
  IntVec x;
  x.reserve(c_.size());
  for (const auto& ci : c_) {
    if (m % ci.den() != 0) throw Error("point " + to_string() + " is not in G_" + std::to_string(m));
    x.push_back(ci.num() * (m / ci.den()));
  }
  return x;
}

RatPoint operator+(const RatPoint& a, const RatPoint& b) {
  if (a.dim() != b.dim()) throw Error("point dimension mismatch");
  RatVec c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] + b.c_[i];
  return RatPoint::reduce(std::move(c));
}

RatPoint RatPoint::operator-() const {
  RatVec c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -c_[i];
  return reduce(std::move(c));
}

RatPoint operator-(const RatPoint& a, const RatPoint& b) { return a + (-b); }

std::string RatPoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ", ";
    s += c_[i].to_string();
  }
  return s + ")";
}

RatVec mul(const IntMatrix& m, const RatVec& v) {
  if (m.cols() != v.size()) throw Error("matrix-vector dimension mismatch");
  RatVec out(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) out[i] += Rational(m(i, j)) * v[j];
  return out;
}

}  // namespace torus
