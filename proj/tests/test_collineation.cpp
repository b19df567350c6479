#include <gtest/gtest.h>

#include <cstdlib>
#include <numeric>
#include <set>

#include "torus/collineation.hpp"

using namespace torus;

namespace {

// Lines of (Z/m)^2 as sorted index lists, built directly from unit generators.
std::vector<std::vector<int>> naive_lines(int m) {
  std::set<std::vector<int>> out;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (std::gcd(std::gcd(a, b), m) != 1) continue;
      for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
          std::vector<int> pts;
          for (int t = 0; t < m; ++t) pts.push_back(((x + t * a) % m) * m + (y + t * b) % m);
          std::sort(pts.begin(), pts.end());
          out.insert(pts);
        }
    }
  return {out.begin(), out.end()};
}

// Plain backtracker: points in index order; a partial map dies as soon as
// the assigned part of some line has images lying on no common line. Only
// lines through the newest point can have changed.
struct NaiveCounter {
  int m, size;
  std::vector<std::vector<int>> lines;
  std::vector<std::vector<char>> on;  // on[l][p]
  std::vector<int> image;
  std::vector<char> used;
  long long count = 0;

  explicit NaiveCounter(int mod) : m(mod), size(mod * mod), lines(naive_lines(mod)) {
    on.assign(lines.size(), std::vector<char>(static_cast<std::size_t>(size), 0));
    for (std::size_t l = 0; l < lines.size(); ++l)
      for (int p : lines[l]) on[l][static_cast<std::size_t>(p)] = 1;
    image.assign(static_cast<std::size_t>(size), -1);
    used.assign(static_cast<std::size_t>(size), 0);
  }

  bool consistent(int upto) const {
    for (std::size_t li = 0; li < lines.size(); ++li) {
      const auto& l = lines[li];
      if (!on[li][static_cast<std::size_t>(upto)]) continue;
      std::vector<int> imgs;
      for (int p : l)
        if (p <= upto) imgs.push_back(image[static_cast<std::size_t>(p)]);
      if (imgs.size() < 2) continue;
      bool some = false;
      for (std::size_t k = 0; k < lines.size() && !some; ++k) {
        bool all = true;
        for (int q : imgs) all = all && on[k][static_cast<std::size_t>(q)];
        some = all;
      }
      if (!some) return false;
    }
    return true;
  }

  void go(int p) {
    if (p == size) {
      ++count;
      return;
    }
    for (int q = 0; q < size; ++q) {
      if (used[static_cast<std::size_t>(q)]) continue;
      used[static_cast<std::size_t>(q)] = 1;
      image[static_cast<std::size_t>(p)] = q;
      if (consistent(p)) go(p + 1);
      used[static_cast<std::size_t>(q)] = 0;
    }
    image[static_cast<std::size_t>(p)] = -1;
  }
};

long long brute_affine_order(int n, int m) {
  const int entries = n * n;
  long long total = 1;
  for (int i = 0; i < entries; ++i) total *= m;
  long long invertible = 0;
  std::vector<int> a(static_cast<std::size_t>(entries));
  for (long long code = 0; code < total; ++code) {
    long long c = code;
    for (auto& e : a) {
      e = static_cast<int>(c % m);
      c /= m;
    }
    long long det;
    if (n == 2) {
      det = a[0] * a[3] - a[1] * a[2];
    } else {
      det = a[0] * (a[4] * a[8] - a[5] * a[7]) - a[1] * (a[3] * a[8] - a[5] * a[6]) +
            a[2] * (a[3] * a[7] - a[4] * a[6]);
    }
    if (std::gcd(std::llabs(det), static_cast<long long>(m)) == 1) ++invertible;
  }
  long long translations = 1;
  for (int i = 0; i < n; ++i) translations *= m;
  return invertible * translations;
}

std::vector<PointIndex> compose(const std::vector<PointIndex>& f, const std::vector<PointIndex>& g) {
  std::vector<PointIndex> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[g[x]];
  return out;
}

}  // namespace

TEST(AffineGroupOrder, Examples) {
  EXPECT_EQ(affine_group_order(2, 3), 432);
  EXPECT_EQ(affine_group_order(2, 2), 24);
  EXPECT_EQ(affine_group_order(2, 4), 1536);
  EXPECT_EQ(affine_group_order(2, 5), 12000);
  EXPECT_EQ(affine_group_order(1, 7), 42);
}

TEST(AffineGroupOrder, MatchesBruteForce) {
  for (int m = 2; m <= 12; ++m) EXPECT_EQ(affine_group_order(2, m), brute_affine_order(2, m)) << m;
  for (int m = 2; m <= 4; ++m) EXPECT_EQ(affine_group_order(3, m), brute_affine_order(3, m)) << m;
}

TEST(IsAffinePerm, Examples) {
  Grid g(2, 5);
  std::vector<PointIndex> shift(g.size()), doubled(g.size());
  for (PointIndex x = 0; x < g.size(); ++x) {
    shift[x] = g.add(x, g.unit(0));
    doubled[x] = g.scale(2, x);
  }
  auto t = is_affine_perm(shift, 2, 5);
  ASSERT_TRUE(t);
  EXPECT_EQ(t->matrix(), IntMatrix::identity(2));
  EXPECT_EQ(t->translation(), RatPoint::from_grid(IntVec{1, 0}, 5));
  auto d = is_affine_perm(doubled, 2, 5);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->matrix(), IntMatrix::diagonal(IntVec{2, 2}));
  std::vector<PointIndex> swapped(g.size());
  std::iota(swapped.begin(), swapped.end(), 0U);
  std::swap(swapped[7], swapped[8]);
  EXPECT_FALSE(is_affine_perm(swapped, 2, 5));
}

TEST(CollineationGroup, MatchesNaiveBacktracker) {
  for (int m : {3, 4}) {
    NaiveCounter naive(m);
    naive.go(0);
    auto s = collineation_group(2, m);
    EXPECT_EQ(s.order, naive.count) << m;
  }
}

TEST(CollineationGroup, KnownOrders) {
  auto s3 = collineation_group(2, 3);
  EXPECT_EQ(s3.order, 432);
  EXPECT_EQ(s3.affine_order, 432);
  EXPECT_EQ(s3.index, 1);
  auto s4 = collineation_group(2, 4);
  EXPECT_EQ(s4.order, 6144);
  EXPECT_EQ(s4.index, 4);
  auto s5 = collineation_group(2, 5);
  EXPECT_EQ(s5.order, 12000);
  EXPECT_EQ(s5.index, 1);
}

TEST(CollineationGroup, WorkerCountDoesNotChangeTheResult) {
  for (Int m : {3, 4, 5}) {
    auto one = collineation_group(2, m, {1, kDefaultNodeBudget});
    for (std::size_t w : {2U, 4U, 7U}) {
      auto many = collineation_group(2, m, {w, kDefaultNodeBudget});
      EXPECT_EQ(many.order, one.order);
      EXPECT_EQ(many.nodes, one.nodes);
      EXPECT_EQ(many.generators, one.generators);
    }
  }
}

TEST(CollineationGroup, GeneratorsAreCollineations) {
  for (Int m : {3, 4, 5, 6}) {
    auto s = collineation_group(2, m);
    auto inc = IncidenceStructure::shared(2, m);
    EXPECT_FALSE(s.generators.empty());
    for (const auto& perm : s.generators) {
      for (const auto& l : inc->lines()) {
        std::vector<PointIndex> img;
        for (PointIndex p : l.points) img.push_back(perm[p]);
        EXPECT_TRUE(inc->find_line(img));
      }
    }
  }
}

TEST(CollineationGroup, GeneratorsGenerateTheWholeGroup) {
  for (Int m : {3, 4}) {
    auto s = collineation_group(2, m);
    std::vector<PointIndex> id(static_cast<std::size_t>(m * m));
    std::iota(id.begin(), id.end(), 0U);
    std::set<std::vector<PointIndex>> seen{id};
    std::vector<std::vector<PointIndex>> frontier{id};
    while (!frontier.empty()) {
      std::vector<std::vector<PointIndex>> next;
      for (const auto& f : frontier)
        for (const auto& g : s.generators) {
          auto h = compose(g, f);
          if (seen.insert(h).second) next.push_back(std::move(h));
        }
      frontier = std::move(next);
    }
    EXPECT_EQ(static_cast<Int>(seen.size()), s.order) << m;
  }
}

TEST(CollineationGroup, BudgetAndPreconditions) {
  EXPECT_THROW(collineation_group(2, 5, {1, 100}), BudgetExceeded);
  EXPECT_THROW(collineation_group(2, 5, {4, 100}), BudgetExceeded);
  auto s = collineation_group(2, 3);
  EXPECT_NO_THROW(collineation_group(2, 3, {2, s.nodes}));
  EXPECT_THROW(collineation_group(2, 3, {2, s.nodes - 1}), BudgetExceeded);
  EXPECT_THROW(collineation_group(3, 3), Error);
  EXPECT_THROW(collineation_group(2, 2), Error);
}

TEST(CollineationGroup, BudgetFromEnvironment) {
  ::setenv("TORUS_AFFINE_BUDGET", "1234", 1);
  EXPECT_EQ(default_node_budget(), 1234U);
  ::setenv("TORUS_AFFINE_BUDGET", "12x", 1);
  EXPECT_THROW(default_node_budget(), Error);
  ::setenv("TORUS_AFFINE_BUDGET", "0", 1);
  EXPECT_THROW(default_node_budget(), Error);
  ::unsetenv("TORUS_AFFINE_BUDGET");
  EXPECT_EQ(default_node_budget(), kDefaultNodeBudget);
}
