#include "torus/geometry.hpp"

#include <algorithm>
#include <array>

#include "torus/detail/congruence.hpp"

namespace torus {

Int IntersectionCount::value() const {
  if (is_infinite()) throw Error("intersection count is infinite");
  return k_;
}

// RationalLine -------------------------------------------------------------------

RationalLine RationalLine::raw(RatPoint base, PrimVec dir) {
  if (base.dim() != dir.size()) throw Error("line base and direction dimensions differ");
  return RationalLine(std::move(base), std::move(dir), false);
}

LatticeBasis RationalLine::tangent() const {
  return hnf(dim(), std::span<const IntVec>(&dir_.entries(), 1));
}

RationalLine RationalLine::canonicalized() const {
  if (canonical_) return *this;
  UnimodularFrame frame = complete_basis(tangent());
  return RationalLine(detail::canonical_base(base_, 1, frame), dir_, true);
}

RatPoint RationalLine::point_at(const Rational& t) const {
  RatVec x = base_.coords();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += t * Rational(dir_[i]);
  return RatPoint::reduce(std::move(x));
}

bool operator==(const RationalLine& a, const RationalLine& b) {
  if (a.dir_ != b.dir_) return false;
  return a.canonicalized().base_ == b.canonicalized().base_;
}

std::string RationalLine::to_string() const {
  std::string s = "dir (";
  for (std::size_t i = 0; i < dim(); ++i) s += (i ? ", " : "") + std::to_string(dir_[i]);
  return s + ") base " + base_.to_string();
}

RationalLine line_through(const RatPoint& p, std::span<const Int> d) {
  if (p.dim() != d.size()) throw Error("point and direction dimensions differ");
  return RationalLine::raw(p, primitive_part(d).prim).canonicalized();
}

bool contains(const RationalLine& line, const RatPoint& p) {
  if (p.dim() != line.dim()) throw Error("dimension mismatch");
  UnimodularFrame frame = complete_basis(line.tangent());
  RatVec c = mul(frame.forward, (p - line.base()).coords());
  return std::all_of(c.begin() + 1, c.end(), [](const Rational& x) { return x.is_integer(); });
}

bool are_parallel(const RationalLine& a, const RationalLine& b) { return a.dir() == b.dir(); }

IntersectionCount intersection_count_2d(const RationalLine& a, const RationalLine& b) {
  if (a.dim() != 2 || b.dim() != 2) throw Error("intersection_count_2d requires lines in T^2");
  if (are_parallel(a, b)) return a == b ? IntersectionCount::infinite() : IntersectionCount::finite(0);
  Int det = checked::sub(checked::mul(a.dir()[0], b.dir()[1]), checked::mul(a.dir()[1], b.dir()[0]));
  return IntersectionCount::finite(checked::abs(det));
}

std::vector<RatPoint> intersection_points(const RationalLine& a, const RationalLine& b) {
  const LatticeBasis ta = a.tangent();
  const LatticeBasis tb = b.tangent();
  auto result = detail::intersect_cosets(a.base(), ta, b.base(), tb, complete_basis(tb));
  if (result.empty) return {};
  if (result.dimension > 0) throw Error("infinite intersection: the lines coincide");
  return result.points;
}

IntersectionCount line_hyperplane_count(const RationalLine& line, std::size_t axis) {
  if (axis >= line.dim()) throw Error("axis index out of range");
  Int v = line.dir()[axis];
  if (v != 0) return IntersectionCount::finite(checked::abs(v));
  return line.base()[axis] == Rational(0) ? IntersectionCount::infinite() : IntersectionCount::finite(0);
}

std::vector<RatPoint> line_grid_points(const RationalLine& line, Int m) {
  if (m < 1) throw Error("grid modulus must be positive");
  UnimodularFrame frame = complete_basis(line.tangent());
  RatVec scaled = line.base().coords();
  for (auto& x : scaled) x *= Rational(m);
  RatVec c = mul(frame.forward, scaled);
  if (!std::all_of(c.begin() + 1, c.end(), [](const Rational& x) { return x.is_integer(); })) return {};
  Rational start = (-c[0]).frac();
  std::vector<RatPoint> pts;
  pts.reserve(static_cast<std::size_t>(m));
  for (Int k = 0; k < m; ++k) pts.push_back(line.point_at((start + Rational(k)) / Rational(m)));
  return pts;
}

RationalLine reflect_x(const RationalLine& line) {
  if (line.dim() != 2) throw Error("reflect_x requires a line in T^2");
  const IntVec dir{line.dir()[0], checked::neg(line.dir()[1])};
  RatPoint base = RatPoint::reduce({line.base()[0], -line.base()[1]});
  return line_through(base, dir);
}

// Blocks -----------------------------------------------------------------------------

namespace {

bool on_common_line(const RatPoint& a, const RatPoint& b, const IntVec& dir) {
  return contains(line_through(a, dir), b);
}

}  // namespace

bool is_block(const RatPoint& p1, const RatPoint& p2, const RatPoint& p3, const RatPoint& p4) {
  const std::array<const RatPoint*, 4> pts{&p1, &p2, &p3, &p4};
  for (const auto* p : pts)
    if (p->dim() != 2) throw Error("blocks live in T^2");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (*pts[i] == *pts[j]) return false;

  static const IntVec horizontal{1, 0}, vertical{0, 1}, slope_up{1, 1}, slope_down{1, -1};
  std::array<int, 4> label{0, 1, 2, 3};
  do {
    const RatPoint& P = *pts[label[0]];
    const RatPoint& Q = *pts[label[1]];
    const RatPoint& R = *pts[label[2]];
    const RatPoint& S = *pts[label[3]];
    if (on_common_line(P, Q, horizontal) && on_common_line(R, S, horizontal) &&
        on_common_line(P, R, vertical) && on_common_line(Q, S, vertical) &&
        on_common_line(P, S, slope_up) && on_common_line(Q, R, slope_down))
      return true;
  } while (std::next_permutation(label.begin(), label.end()));
  return false;
}

bool block_criterion(const Rational& x0, const Rational& x1, const Rational& y0, const Rational& y1) {
  if ((x1 - x0).frac() == Rational(0) || (y1 - y0).frac() == Rational(0))
    throw Error("block_criterion requires x0 != x1 and y0 != y1");
  const Rational dx = (x1 - x0).frac();
  return dx == (y1 - y0).frac() || dx == (y0 - y1).frac();
}

}  // namespace torus
