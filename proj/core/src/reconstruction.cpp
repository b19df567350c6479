#include "torus/reconstruction.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <thread>
#include <unordered_set>

namespace torus {

namespace {

IntVec sign_canonical(IntVec v, Int m) {
  for (Int& c : v) c = balanced_residue(c, m);
  auto lead = std::find_if(v.begin(), v.end(), [](Int c) { return c != 0; });
  if (lead != v.end() && *lead < 0)
    for (Int& c : v) c = balanced_residue(-c, m);
  return v;
}

/// g(x) == A x (mod m) for every grid point.
bool agrees_linear(const GridMap& g, const IntMatrix& a) {
  const Grid& grid = g.grid();
  for (PointIndex i = 0; i < grid.size(); ++i)
    if (grid.index(a * grid.point(i)) != g(i)) return false;
  return true;
}

std::vector<PointIndex> image_of(const GridMap& f, std::span<const PointIndex> pts) {
  std::vector<PointIndex> out;
  out.reserve(pts.size());
  for (PointIndex p : pts) out.push_back(f(p));
  return out;
}

std::optional<std::array<PointIndex, 3>> first_bad_triple(const GridMap& f, std::span<const PointIndex> pts,
                                                          const IncidenceStructure& inc) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        const std::array<PointIndex, 3> img{f(pts[i]), f(pts[j]), f(pts[k])};
        if (!inc.collinear(img)) return std::array<PointIndex, 3>{pts[i], pts[j], pts[k]};
      }
  return std::nullopt;
}

}  // namespace

TranslationSplit normalize_translation(const GridMap& f) {
  const Grid& grid = f.grid();
  const PointIndex f0 = f(0);
  std::vector<PointIndex> image(grid.size());
  for (PointIndex i = 0; i < grid.size(); ++i) image[i] = grid.sub(f(i), f0);
  return {GridMap(f.dim(), f.modulus(), std::move(image)), RatPoint::from_grid(grid.point(f0), f.modulus())};
}

IntVec image_direction(const GridMap& g, std::span<const Int> d) {
  const Grid& grid = g.grid();
  const Int m = grid.modulus();
  if (g(0) != 0) throw Error("image_direction needs a map fixing 0");
  const PointIndex di = grid.index(d);
  if (!grid.is_unit(di)) throw Error("direction is not a generator of a discrete line");

  std::vector<PointIndex> line, image;
  for (Int t = 0; t < m; ++t) line.push_back(grid.scale(t, di));
  image = image_of(g, line);
  std::sort(image.begin(), image.end());

  auto generates = [&](PointIndex w) {
    if (!grid.is_unit(w)) return false;
    std::vector<PointIndex> span;
    for (Int t = 0; t < m; ++t) span.push_back(grid.scale(t, w));
    std::sort(span.begin(), span.end());
    return span == image;
  };
  std::optional<PointIndex> gen;
  if (generates(g(di))) {
    gen = g(di);
  } else {
    for (PointIndex w : image)
      if (generates(w)) {
        gen = w;
        break;
      }
  }
  if (!gen) {
    auto inc = IncidenceStructure::shared(grid.dim(), m);
    throw CollinearityError("not a collineation on this line", first_bad_triple(g, line, *inc));
  }
  return sign_canonical(grid.point(*gen), m);
}

Inference infer_affine(const GridMap& f) {
  const std::size_t n = f.dim();
  const Int m = f.modulus();
  if (m < 3) throw Error("modulus too small");
  TranslationSplit split = normalize_translation(f);
  const GridMap& g = split.linear;

  try {
    std::vector<IntVec> columns;
    for (std::size_t i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      columns.push_back(image_direction(g, e));
    }
    const IntMatrix base = IntMatrix::from_columns(columns, n);
    if (gcd(determinant(base), m) == 1) {
      std::vector<IntMatrix> variants;
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        IntVec s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1U ? -1 : 1;
        variants.push_back(balanced(base * IntMatrix::diagonal(s), m));
      }
      if (n == 2) {
        const IntVec r{1, -1};
        const std::size_t plain = variants.size();
        for (std::size_t k = 0; k < plain; ++k) variants.push_back(balanced(IntMatrix::diagonal(r) * variants[k], m));
      }
      for (const IntMatrix& a : variants)
        if (agrees_linear(g, a)) return AffineTorusAuto::modular(a, split.translation, m);
    }
  } catch (const CollinearityError&) {
  }

  if (auto w = verify_line_preserving(f)) return *w;
  return LinePreservingNonAffine{};
}

std::optional<Witness> verify_line_preserving(const GridMap& f, std::size_t workers) {
  auto inc = IncidenceStructure::shared(f.dim(), f.modulus());
  const auto& lines = inc->lines();
  const std::size_t total = lines.size();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();

  std::atomic<std::size_t> first{none};
  auto scan = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (i >= first.load(std::memory_order_relaxed)) return;
      if (!inc->find_line(image_of(f, lines[i].points))) {
        std::size_t cur = first.load();
        while (i < cur && !first.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  };

  workers = std::max<std::size_t>(1, std::min(workers, total));
  if (workers == 1) {
    scan(0, total);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back(scan, std::min(total, w * chunk), std::min(total, (w + 1) * chunk));
    for (auto& t : pool) t.join();
  }

  const std::size_t bad = first.load();
  if (bad == none) return std::nullopt;
  return Witness{lines[bad], first_bad_triple(f, lines[bad].points, *inc)};
}

bool validate_witness(const GridMap& f, const Witness& w) {
  auto inc = IncidenceStructure::shared(f.dim(), f.modulus());
  auto idx = inc->find_line(w.line.points);
  if (!idx || inc->lines()[*idx].points != w.line.points) return false;
  if (inc->find_line(image_of(f, w.line.points))) return false;
  if (!w.triple) return true;

  const auto& t = *w.triple;
  if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) return false;
  const Bitset& mask = inc->line_mask(*idx);
  if (!mask.test(t[0]) || !mask.test(t[1]) || !mask.test(t[2])) return false;
  const std::array<PointIndex, 3> img{f(t[0]), f(t[1]), f(t[2])};
  for (std::size_t i = 0; i < inc->lines().size(); ++i) {
    const Bitset& l = inc->line_mask(i);
    if (l.test(img[0]) && l.test(img[1]) && l.test(img[2])) return false;
  }
  return true;
}

namespace {

/// Subgroup membership for each direction class, indexed by direction.
std::vector<Bitset> direction_subgroups(const IncidenceStructure& inc) {
  std::vector<Bitset> out(inc.direction_count());
  for (std::size_t i = 0; i < inc.lines().size(); ++i) {
    const DiscreteLine& l = inc.lines()[i];
    if (l.base == 0) out[l.direction] = inc.line_mask(i);
  }
  return out;
}

std::size_t direction_of(const IncidenceStructure& inc, std::span<const PointIndex> pts) {
  auto idx = inc.find_line(pts);
  if (!idx) throw Error("internal: image of a line is not a line");
  return inc.lines()[*idx].direction;
}

std::size_t direction_through_zero(const IncidenceStructure& inc, PointIndex generator) {
  for (std::size_t i = 0; i < inc.lines().size(); ++i) {
    const DiscreteLine& l = inc.lines()[i];
    if (l.base != 0) break;
    if (inc.line_mask(i).test(generator)) {
      const Grid& g = inc.grid();
      if (g.is_unit(generator)) return l.direction;
    }
  }
  throw Error("internal: no line through 0 with this generator");
}

bool check_blocks(const GridMap& f, const IncidenceStructure& inc, std::size_t& checked) {
  const Grid& grid = inc.grid();
  const Int m = grid.modulus();
  const auto sub = direction_subgroups(inc);
  const std::array<IntVec, 4> dirs{IntVec{1, 0}, IntVec{0, 1}, IntVec{1, 1}, IntVec{1, -1}};
  std::array<std::size_t, 4> src{}, dst{};
  for (std::size_t k = 0; k < 4; ++k) {
    src[k] = direction_through_zero(inc, grid.index(dirs[k]));
    std::vector<PointIndex> line0;
    for (Int t = 0; t < m; ++t) line0.push_back(grid.scale(t, grid.index(dirs[k])));
    dst[k] = direction_of(inc, image_of(f, line0));
  }
  // Horizontal, horizontal, vertical, vertical, slope +1, slope -1.
  auto incident = [&](const std::array<PointIndex, 4>& q, const std::array<std::size_t, 4>& d) {
    const auto& [P, Q, R, S] = q;
    return sub[d[0]].test(grid.sub(Q, P)) && sub[d[0]].test(grid.sub(S, R)) && sub[d[1]].test(grid.sub(R, P)) &&
           sub[d[1]].test(grid.sub(S, Q)) && sub[d[2]].test(grid.sub(S, P)) && sub[d[3]].test(grid.sub(R, Q));
  };
  for (Int x0 = 0; x0 < m; ++x0)
    for (Int x1 = 0; x1 < m; ++x1)
      for (Int y0 = 0; y0 < m; ++y0)
        for (Int y1 = 0; y1 < m; ++y1) {
          if (x0 == x1 || y0 == y1) continue;
          const std::array<PointIndex, 4> pts{grid.index(IntVec{x0, y0}), grid.index(IntVec{x1, y0}),
                                              grid.index(IntVec{x0, y1}), grid.index(IntVec{x1, y1})};
          std::array<int, 4> label{0, 1, 2, 3};
          do {
            const std::array<PointIndex, 4> q{pts[label[0]], pts[label[1]], pts[label[2]], pts[label[3]]};
            if (!incident(q, src)) continue;
            ++checked;
            if (!incident({f(q[0]), f(q[1]), f(q[2]), f(q[3])}, dst)) return false;
          } while (std::next_permutation(label.begin(), label.end()));
        }
  return true;
}

std::vector<Int> prime_factors(Int m) {
  std::vector<Int> out;
  for (Int p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  if (m > 1) out.push_back(m);
  return out;
}

bool check_subtori(const GridMap& f, const IncidenceStructure& inc, std::size_t& checked) {
  const Grid& grid = inc.grid();
  const std::size_t n = grid.dim();
  const Int m = grid.modulus();
  const auto primes = prime_factors(m);

  std::vector<PointIndex> generators;
  for (std::size_t i = 0; i < inc.lines().size() && inc.lines()[i].base == 0; ++i)
    generators.push_back(inc.lines()[i].generator);

  auto is_free = [&](const Bitset& h, std::size_t k) {
    std::vector<PointIndex> members;
    for (PointIndex p = 0; p < grid.size(); ++p)
      if (h.test(p)) members.push_back(p);
    Int expect = 1;
    for (std::size_t i = 0; i < k; ++i) expect *= m;
    if (static_cast<Int>(members.size()) != expect) return false;
    for (Int p : primes) {
      Int torsion = 0, want = 1;
      for (std::size_t i = 0; i < k; ++i) want *= p;
      for (PointIndex x : members)
        if (grid.scale(p, x) == 0) ++torsion;
      if (torsion != want) return false;
    }
    return true;
  };

  // Free summands of rank k through 0, grown one generator at a time.
  std::vector<std::vector<PointIndex>> level;
  std::unordered_set<Bitset, BitsetHash> seen;
  for (PointIndex gen : generators) {
    std::vector<PointIndex> h;
    for (Int t = 0; t < m; ++t) h.push_back(grid.scale(t, gen));
    level.push_back(std::move(h));
  }
  bool ok = true;
  for (std::size_t k = 2; k < n && ok; ++k) {
    std::vector<std::vector<PointIndex>> next;
    std::unordered_set<Bitset, BitsetHash> masks;
    for (const auto& h : level)
      for (PointIndex gen : generators) {
        Bitset mask(grid.size());
        for (PointIndex x : h)
          for (Int t = 0; t < m; ++t) mask.set(grid.add(x, grid.scale(t, gen)));
        if (masks.count(mask) || !is_free(mask, k)) continue;
        std::vector<PointIndex> members;
        for (PointIndex p = 0; p < grid.size(); ++p)
          if (mask.test(p)) members.push_back(p);
        masks.insert(mask);
        next.push_back(std::move(members));
      }
    for (const auto& h : next) {
      Bitset covered(grid.size());
      for (PointIndex x = 0; x < grid.size() && ok; ++x) {
        if (covered.test(x)) continue;
        Bitset image(grid.size());
        const PointIndex fx = f(x);
        for (PointIndex y : h) {
          covered.set(grid.add(x, y));
          image.set(grid.sub(f(grid.add(x, y)), fx));
        }
        ++checked;
        if (!masks.count(image)) ok = false;
      }
    }
    level = std::move(next);
  }
  return ok;
}

}  // namespace

PropertyReport check_incidence_properties(const GridMap& f) {
  if (verify_line_preserving(f)) throw Error("precondition violated: map is not line preserving");
  auto inc = IncidenceStructure::shared(f.dim(), f.modulus());
  PropertyReport report;

  std::vector<std::optional<std::size_t>> image_direction_of(inc->direction_count());
  for (const DiscreteLine& l : inc->lines()) {
    const std::size_t d = direction_of(*inc, image_of(f, l.points));
    auto& slot = image_direction_of[l.direction];
    if (!slot) {
      slot = d;
      ++report.parallel_classes_checked;
    } else if (*slot != d) {
      report.parallels_preserved = false;
    }
  }

  if (f.dim() == 2) {
    report.blocks_preserved = check_blocks(f, *inc, report.blocks_checked);
  } else {
    report.subtori_preserved = check_subtori(f, *inc, report.subtori_checked);
  }
  return report;
}

}  // namespace torus
