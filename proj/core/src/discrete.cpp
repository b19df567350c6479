#include "torus/discrete.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>

namespace torus {

Grid::Grid(std::size_t n, Int m) : n_(n), m_(m) {
  if (n == 0) throw Error("grid dimension must be positive");
  if (m < 1) throw Error("grid modulus must be positive");
  Int size = 1;
  for (std::size_t i = 0; i < n; ++i) {
    size = checked::mul(size, m);
    if (size > (Int{1} << 30)) throw Error("grid too large");
  }
  size_ = static_cast<PointIndex>(size);
}

IntVec Grid::point(PointIndex i) const {
  IntVec x(n_);
  for (std::size_t k = n_; k-- > 0;) {
    x[k] = static_cast<Int>(i % static_cast<PointIndex>(m_));
    i /= static_cast<PointIndex>(m_);
  }
  return x;
}

PointIndex Grid::index(std::span<const Int> x) const {
  if (x.size() != n_) throw Error("grid point dimension mismatch");
  PointIndex i = 0;
  for (Int c : x) i = i * static_cast<PointIndex>(m_) + static_cast<PointIndex>(mod_floor(c, m_));
  return i;
}

PointIndex Grid::add(PointIndex a, PointIndex b) const {
  const auto m = static_cast<PointIndex>(m_);
  PointIndex out = 0, place = 1;
  for (std::size_t k = 0; k < n_; ++k) {
    out += ((a % m + b % m) % m) * place;
    a /= m;
    b /= m;
    place *= m;
  }
  return out;
}

PointIndex Grid::sub(PointIndex a, PointIndex b) const {
  const auto m = static_cast<PointIndex>(m_);
  PointIndex out = 0, place = 1;
  for (std::size_t k = 0; k < n_; ++k) {
    out += ((a % m + m - b % m) % m) * place;
    a /= m;
    b /= m;
    place *= m;
  }
  return out;
}

PointIndex Grid::scale(Int k, PointIndex a) const {
  const auto m = static_cast<PointIndex>(m_);
  const auto kk = static_cast<std::uint64_t>(mod_floor(k, m_));
  PointIndex out = 0, place = 1;
  for (std::size_t j = 0; j < n_; ++j) {
    out += static_cast<PointIndex>((kk * (a % m)) % m) * place;
    a /= m;
    place *= m;
  }
  return out;
}

PointIndex Grid::unit(std::size_t axis) const {
  IntVec e(n_, 0);
  e.at(axis) = 1;
  return index(e);
}

bool Grid::is_unit(PointIndex a) const {
  Int g = m_;
  for (Int c : point(a)) g = gcd(g, c);
  return g == 1;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Bitset::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool Bitset::is_subset_of(const Bitset& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

Bitset& Bitset::operator&=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

Bitset& Bitset::operator|=(const Bitset& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

std::size_t BitsetHash::operator()(const Bitset& b) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ b.size();
  for (auto w : b.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

IncidenceStructure::IncidenceStructure(std::size_t n, Int m) : grid_(n, m) {
  if (n < 2) throw Error("discrete lines need dimension at least 2");
  if (m < 3) throw Error("modulus too small");
  const PointIndex size = grid_.size();

  // Direction classes: cyclic subgroups of order m with a unit generator.
  std::vector<std::vector<PointIndex>> subgroups;
  std::vector<bool> claimed(size, false);
  for (PointIndex a = 0; a < size; ++a) {
    if (claimed[a] || !grid_.is_unit(a)) continue;
    std::vector<PointIndex> members;
    for (Int k = 0; k < m; ++k) {
      PointIndex ka = grid_.scale(k, a);
      members.push_back(ka);
      if (gcd(k, m) == 1) claimed[ka] = true;
    }
    std::sort(members.begin(), members.end());
    direction_generators_.push_back(a);
    subgroups.push_back(std::move(members));
  }

  for (std::size_t d = 0; d < subgroups.size(); ++d) {
    std::vector<bool> seen(size, false);
    for (PointIndex x = 0; x < size; ++x) {
      if (seen[x]) continue;
      DiscreteLine line;
      line.base = x;
      line.generator = direction_generators_[d];
      line.direction = d;
      for (PointIndex h : subgroups[d]) {
        PointIndex p = grid_.add(x, h);
        seen[p] = true;
        line.points.push_back(p);
      }
      std::sort(line.points.begin(), line.points.end());
      lines_.push_back(std::move(line));
    }
  }
  std::sort(lines_.begin(), lines_.end(), [](const DiscreteLine& a, const DiscreteLine& b) {
    return a.base != b.base ? a.base < b.base : a.generator < b.generator;
  });

  point_lines_.assign(size, {});
  lines_by_base_.assign(size, {});
  masks_.reserve(lines_.size());
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    Bitset mask(size);
    for (PointIndex p : lines_[i].points) {
      mask.set(p);
      point_lines_[p].push_back(static_cast<std::uint32_t>(i));
    }
    lines_by_base_[lines_[i].base].push_back(static_cast<std::uint32_t>(i));
    masks_.push_back(std::move(mask));
  }
}

std::shared_ptr<const IncidenceStructure> IncidenceStructure::shared(std::size_t n, Int m) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, Int>, std::shared_ptr<const IncidenceStructure>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{n, m}];
  if (!slot) slot = std::make_shared<const IncidenceStructure>(n, m);
  return slot;
}

std::optional<std::size_t> IncidenceStructure::find_line(std::span<const PointIndex> points) const {
  if (points.size() != static_cast<std::size_t>(grid_.modulus())) return std::nullopt;
  std::vector<PointIndex> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.back() >= grid_.size()) return std::nullopt;
  for (std::uint32_t i : lines_by_base_[sorted.front()])
    if (lines_[i].points == sorted) return i;
  return std::nullopt;
}

bool IncidenceStructure::collinear(std::span<const PointIndex> points) const {
  if (points.empty()) return true;
  for (std::uint32_t i : point_lines_[points.front()]) {
    const Bitset& mask = masks_[i];
    if (std::all_of(points.begin(), points.end(), [&](PointIndex p) { return mask.test(p); })) return true;
  }
  return false;
}

std::vector<DiscreteLine> enumerate_discrete_lines(std::size_t n, Int m) {
  return IncidenceStructure::shared(n, m)->lines();
}

IntVec primitive_lift(std::span<const Int> a, Int m) {
  if (a.empty()) throw Error("primitive_lift of an empty vector");
  IntVec v(a.size());
  Int g = m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    v[i] = mod_floor(a[i], m);
    g = gcd(g, v[i]);
  }
  if (g != 1) throw Error("primitive_lift needs gcd(a, m) == 1");
  Int content = 0;
  for (Int c : v) content = gcd(content, c);
  if (content == 1) return v;
  const std::size_t last = v.size() - 1;
  Int head = 0;
  for (std::size_t i = 0; i < last; ++i) head = gcd(head, v[i]);
  if (head == 0) {
    if (last == 0) {
      if (v[0] == 1) return v;
      throw Error("primitive_lift: no primitive lift in dimension 1");
    }
    v[0] = m;
    head = m;
  }
  // Every prime of head either divides m (then it cannot divide v_last) or
  // forbids one residue class of k, so a small k always works.
  for (Int k = 0;; ++k) {
    Int candidate = checked::add(v[last], checked::mul(k, m));
    if (gcd(head, candidate) == 1) {
      v[last] = candidate;
      return v;
    }
  }
}

GridMap::GridMap(std::size_t n, Int m, std::vector<PointIndex> image) : grid_(n, m), image_(std::move(image)) {
  if (n < 2) throw Error("dimension must be at least 2");
  if (m < 3) throw Error("modulus too small");
  if (image_.size() != grid_.size()) throw Error("map must list every grid point exactly once");
  std::vector<bool> hit(image_.size(), false);
  for (PointIndex q : image_) {
    if (q >= grid_.size() || hit[q]) throw Error("map is not a bijection of the grid");
    hit[q] = true;
  }
}

GridMap GridMap::identity(std::size_t n, Int m) {
  Grid g(n, m);
  std::vector<PointIndex> image(g.size());
  std::iota(image.begin(), image.end(), PointIndex{0});
  return GridMap(n, m, std::move(image));
}

}  // namespace torus
