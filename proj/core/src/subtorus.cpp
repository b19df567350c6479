#include "torus/subtorus.hpp"

#include <algorithm>
#include <numeric>

#include "torus/detail/congruence.hpp"

namespace torus {

RationalSubtorus RationalSubtorus::raw(RatPoint base, LatticeBasis lattice) {
  if (base.dim() != lattice.dim()) throw Error("subtorus base and lattice dimensions differ");
  if (!lattice.saturated()) throw Error("subtorus lattice must be saturated");
  UnimodularFrame frame = complete_basis(lattice);
  return RationalSubtorus(std::move(base), std::move(lattice), std::move(frame), false);
}

RationalSubtorus RationalSubtorus::from_line(const RationalLine& line) {
  return raw(line.base(), line.tangent()).canonicalized();
}

RationalSubtorus RationalSubtorus::point(RatPoint p) {
  const std::size_t n = p.dim();
  return raw(std::move(p), hnf(n, {})).canonicalized();
}

RationalSubtorus RationalSubtorus::canonicalized() const {
  if (canonical_) return *this;
  return RationalSubtorus(detail::canonical_base(base_, rank(), frame_), lattice_, frame_, true);
}

bool operator==(const RationalSubtorus& a, const RationalSubtorus& b) {
  if (!(a.lattice_ == b.lattice_)) return false;
  return a.canonicalized().base_ == b.canonicalized().base_;
}

RationalSubtorus subtorus_span(const RatPoint& base, std::span<const IntVec> dirs) {
  LatticeBasis l = hnf(base.dim(), dirs);
  if (l.rank() == 0) throw Error("no direction: every spanning vector is zero");
  return RationalSubtorus::raw(base, saturate(l)).canonicalized();
}

bool contains_point(const RationalSubtorus& s, const RatPoint& p) {
  RatVec c = mul(s.frame().forward, (p - s.base()).coords());
  return std::all_of(c.begin() + static_cast<std::ptrdiff_t>(s.rank()), c.end(),
                     [](const Rational& x) { return x.is_integer(); });
}

namespace {

Int component_index(const LatticeBasis& a, const LatticeBasis& b) {
  std::vector<IntVec> rows = a.basis();
  rows.insert(rows.end(), b.basis().begin(), b.basis().end());
  if (rows.empty()) return 1;
  auto inv = smith_invariants(IntMatrix::from_rows(rows, a.dim()));
  return std::accumulate(inv.begin(), inv.end(), Int{1}, [](Int x, Int y) { return checked::mul(x, y); });
}

}  // namespace

std::optional<ComponentDecomposition> intersect_subtori(const RationalSubtorus& a, const RationalSubtorus& b) {
  auto sol = detail::intersect_cosets(a.base(), a.lattice(), b.base(), b.lattice(), b.frame());
  if (sol.empty) return std::nullopt;
  const Int count = component_index(a.lattice(), b.lattice());
  if (count != static_cast<Int>(sol.points.size()))
    throw Error("internal: component index disagrees with the congruence solution");
  return ComponentDecomposition{count, RationalSubtorus::raw(sol.points.front(), sol.common).canonicalized(),
                                sol.dimension};
}

std::vector<RatPoint> intersection_points(const RationalSubtorus& a, const RationalSubtorus& b) {
  auto sol = detail::intersect_cosets(a.base(), a.lattice(), b.base(), b.lattice(), b.frame());
  if (sol.empty) return {};
  if (sol.dimension > 0) throw Error("infinite intersection");
  return sol.points;
}

IntersectionCount line_subtorus_count(const RationalLine& line, const RationalSubtorus& s) {
  auto d = intersect_subtori(RationalSubtorus::from_line(line), s);
  if (!d) return IntersectionCount::finite(0);
  if (d->common_dimension > 0) return IntersectionCount::infinite();
  return IntersectionCount::finite(d->component_count);
}

RatPoint quotient_project(const RatPoint& p, const RationalSubtorus& u) {
  if (!contains_point(u, RatPoint::origin(u.dim()))) throw Error("quotient_project needs a subtorus through 0");
  RatVec c = mul(u.frame().forward, p.coords());
  return RatPoint::reduce(RatVec(c.begin() + static_cast<std::ptrdiff_t>(u.rank()), c.end()));
}

RationalSubtorus image_subtorus(const RationalSubtorus& s, const AffineTorusAuto& phi) {
  if (phi.modulus()) throw Error("image_subtorus needs an integral (unimodular) map");
  if (phi.dim() != s.dim()) throw Error("dimension mismatch");
  std::vector<IntVec> image;
  for (const auto& v : s.lattice().basis()) image.push_back(phi.matrix() * v);
  return RationalSubtorus::raw(phi.apply(s.base()), saturate(hnf(s.dim(), image))).canonicalized();
}

}  // namespace torus
