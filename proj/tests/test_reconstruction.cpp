#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "torus/collineation.hpp"
#include "torus/reconstruction.hpp"
#include "torus_cli/commands.hpp"

using namespace torus;

namespace {

GridMap from_affine(const AffineTorusAuto& a, std::size_t n, Int m) {
  Grid g(n, m);
  std::vector<PointIndex> image(g.size());
  for (PointIndex x = 0; x < g.size(); ++x) image[x] = g.index(a.apply_residues(g.point(x)));
  return GridMap(n, m, std::move(image));
}

AffineTorusAuto affine(std::vector<IntVec> columns, IntVec b, Int m) {
  return AffineTorusAuto::modular(IntMatrix::from_columns(columns, columns.size()), b, m);
}

bool agrees(const AffineTorusAuto& a, const GridMap& f) { return from_affine(a, f.dim(), f.modulus()) == f; }

GridMap with_swap(const GridMap& f, PointIndex u, PointIndex v) {
  auto image = f.images();
  std::swap(image[u], image[v]);
  return GridMap(f.dim(), f.modulus(), image);
}

}  // namespace

TEST(NormalizeTranslation, Examples) {
  auto shift = from_affine(affine({{1, 0}, {0, 1}}, {1, 0}, 5), 2, 5);
  auto s = normalize_translation(shift);
  EXPECT_EQ(s.linear, GridMap::identity(2, 5));
  EXPECT_EQ(s.translation, RatPoint::from_grid(IntVec{1, 0}, 5));

  auto fixed = from_affine(affine({{2, 1}, {1, 1}}, {0, 0}, 5), 2, 5);
  EXPECT_EQ(normalize_translation(fixed).linear, fixed);
  EXPECT_EQ(normalize_translation(fixed).translation, RatPoint::origin(2));

  auto shear = affine({{1, 1}, {0, 1}}, {1, 2}, 3);
  auto t = normalize_translation(from_affine(shear, 2, 3));
  EXPECT_EQ(t.linear, from_affine(affine({{1, 1}, {0, 1}}, {0, 0}, 3), 2, 3));
  EXPECT_EQ(t.translation, RatPoint::from_grid(IntVec{1, 2}, 3));
}

TEST(ImageDirection, Examples) {
  EXPECT_EQ(image_direction(GridMap::identity(2, 5), IntVec{1, 0}), (IntVec{1, 0}));
  auto g = from_affine(affine({{2, 1}, {1, 1}}, {0, 0}, 5), 2, 5);
  EXPECT_EQ(image_direction(g, IntVec{1, 0}), (IntVec{2, 1}));
  // Sign canonical: -e1 under x -> -x is reported as e1.
  auto neg = from_affine(affine({{-1, 0}, {0, -1}}, {0, 0}, 7), 2, 7);
  EXPECT_EQ(image_direction(neg, IntVec{1, 0}), (IntVec{1, 0}));
  EXPECT_THROW(image_direction(GridMap::identity(2, 5), IntVec{0, 0}), Error);
  auto moved = from_affine(affine({{1, 0}, {0, 1}}, {1, 0}, 5), 2, 5);
  EXPECT_THROW(image_direction(moved, IntVec{1, 0}), Error);
}

TEST(ImageDirection, RandomPermutationFailsWithAValidTriple) {
  int failures = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = normalize_translation(cli::generate_map(2, 5, seed, cli::MapKind::random)).linear;
    try {
      image_direction(f, IntVec{1, 0});
    } catch (const CollinearityError& e) {
      ++failures;
      ASSERT_TRUE(e.triple());
      auto inc = IncidenceStructure::shared(2, 5);
      const auto& t = *e.triple();
      EXPECT_TRUE(inc->collinear(std::vector<PointIndex>{t[0], t[1], t[2]}));
      EXPECT_FALSE(inc->collinear(std::vector<PointIndex>{f(t[0]), f(t[1]), f(t[2])}));
    }
  }
  EXPECT_GE(failures, 18);
}

TEST(InferAffine, Examples) {
  auto id = infer_affine(GridMap::identity(2, 5));
  ASSERT_TRUE(std::holds_alternative<AffineTorusAuto>(id));
  EXPECT_EQ(std::get<AffineTorusAuto>(id).matrix(), IntMatrix::identity(2));
  EXPECT_EQ(std::get<AffineTorusAuto>(id).translation(), RatPoint::origin(2));

  auto phi = affine({{2, 1}, {1, 1}}, {1, 0}, 5);
  auto got = infer_affine(from_affine(phi, 2, 5));
  ASSERT_TRUE(std::holds_alternative<AffineTorusAuto>(got));
  EXPECT_EQ(std::get<AffineTorusAuto>(got), phi);

  auto neg = infer_affine(from_affine(affine({{-1, 0}, {0, -1}}, {0, 0}, 7), 2, 7));
  ASSERT_TRUE(std::holds_alternative<AffineTorusAuto>(neg));
  EXPECT_EQ(std::get<AffineTorusAuto>(neg).matrix(), IntMatrix::diagonal(IntVec{-1, -1}));

  auto perturbed = with_swap(from_affine(phi, 2, 5), 3, 17);
  auto w = infer_affine(perturbed);
  ASSERT_TRUE(std::holds_alternative<Witness>(w));
  EXPECT_TRUE(validate_witness(perturbed, std::get<Witness>(w)));
  EXPECT_TRUE(std::get<Witness>(w).triple);

  EXPECT_THROW(GridMap(2, 2, {0, 1, 2, 3}), Error);
}

TEST(InferAffine, RoundTripOnRandomAffineMaps) {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    for (auto [n, m] : {std::pair<std::size_t, Int>{2, 3}, {2, 4}, {2, 6}, {2, 9}, {3, 3}, {3, 4}, {3, 6}}) {
      GridMap f = cli::generate_map(n, m, seed, cli::MapKind::affine);
      auto r = infer_affine(f);
      ASSERT_TRUE(std::holds_alternative<AffineTorusAuto>(r)) << "seed " << seed << " m " << m;
      const auto& a = std::get<AffineTorusAuto>(r);
      EXPECT_TRUE(agrees(a, f));
      EXPECT_EQ(a.translation(), RatPoint::from_grid(f.grid().point(f(0)), m));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(a.matrix()(i, j), balanced_residue(a.matrix()(i, j), m));
    }
  }
}

TEST(InferAffine, TranslationEquivariance) {
  oracle::Gen g(41);
  for (int i = 0; i < 40; ++i) {
    const Int m = g.range(3, 9);
    GridMap f = cli::generate_map(2, m, static_cast<std::uint64_t>(i), cli::MapKind::affine);
    IntVec t = g.vec(2, 0, m - 1);
    const Grid& grid = f.grid();
    std::vector<PointIndex> shifted(grid.size());
    for (PointIndex x = 0; x < grid.size(); ++x) shifted[x] = grid.add(f(x), grid.index(t));
    auto a = std::get<AffineTorusAuto>(infer_affine(f));
    auto b = std::get<AffineTorusAuto>(infer_affine(GridMap(2, m, shifted)));
    EXPECT_EQ(a.matrix(), b.matrix());
    EXPECT_EQ(b.translation(), a.translation() + RatPoint::from_grid(t, m));
  }
}

TEST(InferAffine, PerturbedPrimeMapsGiveValidWitnesses) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    for (auto [n, m] : {std::pair<std::size_t, Int>{2, 3}, {2, 5}, {2, 7}, {3, 3}, {3, 5}}) {
      GridMap f = cli::generate_map(n, m, seed, cli::MapKind::perturbed);
      auto r = infer_affine(f);
      ASSERT_TRUE(std::holds_alternative<Witness>(r));
      const auto& w = std::get<Witness>(r);
      EXPECT_TRUE(w.triple);
      EXPECT_TRUE(validate_witness(f, w));
    }
  }
}

// Prime m: every map is either affine or yields a witness; never the third
// outcome. Random maps make the witness case, perturbed and affine the rest.
TEST(InferAffine, DichotomyOnPrimeModuli) {
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    for (Int m : {3, 5, 7})
      for (auto kind : {cli::MapKind::affine, cli::MapKind::perturbed, cli::MapKind::random}) {
        GridMap f = cli::generate_map(2, m, seed, kind);
        auto r = infer_affine(f);
        EXPECT_FALSE(std::holds_alternative<LinePreservingNonAffine>(r));
        EXPECT_EQ(std::holds_alternative<AffineTorusAuto>(r), !verify_line_preserving(f).has_value());
        if (auto* w = std::get_if<Witness>(&r)) EXPECT_TRUE(validate_witness(f, *w));
      }
}

TEST(InferAffine, CompositeModulusCanBeLinePreservingButNotAffine) {
  // The collineation group of (Z/4)^2 is four times the affine group, so some
  // generator is a non-affine collineation.
  auto summary = collineation_group(2, 4);
  bool found = false;
  for (const auto& perm : summary.generators) {
    if (is_affine_perm(perm, 2, 4)) continue;
    GridMap f(2, 4, perm);
    EXPECT_FALSE(verify_line_preserving(f));
    EXPECT_TRUE(std::holds_alternative<LinePreservingNonAffine>(infer_affine(f)));
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(InferAffine, ModulusTooSmall) {
  // GridMap itself rejects m = 2; the check in infer_affine is the same rule.
  try {
    GridMap(2, 2, {0, 1, 2, 3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "modulus too small");
  }
}

// If the unsigned candidate matrix needs an axis sign flip for one non-axis
// line through 0, it needs it for every non-axis line (prime m).
TEST(InferAffine, ReflectionNeedIsAllOrNothing) {
  for (Int m : {5, 7, 11}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      GridMap f = cli::generate_map(2, m, seed, cli::MapKind::affine);
      auto g = normalize_translation(f).linear;
      IntMatrix a0 = IntMatrix::from_columns(
          std::vector<IntVec>{image_direction(g, IntVec{1, 0}), image_direction(g, IntVec{0, 1})}, 2);
      std::optional<bool> needs;
      auto inc = IncidenceStructure::shared(2, m);
      for (const auto& l : inc->lines()) {
        if (l.base != 0) break;
        IntVec d = inc->grid().point(l.generator);
        if (d[0] == 0 || d[1] == 0) continue;
        IntVec guess = a0 * d;
        PointIndex gi = inc->grid().index(guess);
        // The guess is right iff it spans the actual image line.
        bool ok = false;
        for (Int t = 0; t < m; ++t) ok |= inc->grid().scale(t, gi) == g(inc->grid().index(d));
        if (!needs) needs = !ok;
        EXPECT_EQ(*needs, !ok);
      }
    }
  }
}

TEST(VerifyLinePreserving, Examples) {
  auto phi = affine({{2, 1}, {1, 1}}, {3, 4}, 5);
  EXPECT_FALSE(verify_line_preserving(from_affine(phi, 2, 5)));
  auto swapped = with_swap(GridMap::identity(2, 5), 1, 2);
  auto w = verify_line_preserving(swapped);
  ASSERT_TRUE(w);
  EXPECT_TRUE(validate_witness(swapped, *w));
  // Reported line is the first violated one in scan order.
  auto inc = IncidenceStructure::shared(2, 5);
  const auto idx = inc->find_line(w->line.points);
  ASSERT_TRUE(idx);
  for (std::size_t i = 0; i < *idx; ++i) {
    std::vector<PointIndex> img;
    for (PointIndex p : inc->lines()[i].points) img.push_back(swapped(p));
    EXPECT_TRUE(inc->find_line(img));
  }
  EXPECT_FALSE(verify_line_preserving(from_affine(affine({{3, 0}, {0, 3}}, {0, 0}, 5), 2, 5)));
}

TEST(VerifyLinePreserving, FirstViolationIndependentOfWorkers) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    GridMap f = cli::generate_map(3, 5, seed, cli::MapKind::perturbed);
    auto one = verify_line_preserving(f, 1);
    ASSERT_TRUE(one);
    for (std::size_t w : {2U, 3U, 8U}) {
      auto many = verify_line_preserving(f, w);
      ASSERT_TRUE(many);
      EXPECT_EQ(many->line.points, one->line.points);
      EXPECT_EQ(many->triple, one->triple);
    }
  }
}

TEST(ValidateWitness, RejectsForgeries) {
  auto f = with_swap(GridMap::identity(2, 5), 1, 2);
  Witness w = *verify_line_preserving(f);
  Witness bad = w;
  bad.line.points[0] = 24;
  EXPECT_FALSE(validate_witness(f, bad));
  Witness collinear = w;
  collinear.triple = std::array<PointIndex, 3>{w.line.points[2], w.line.points[3], w.line.points[4]};
  // Images of three untouched points stay collinear.
  if (f(w.line.points[2]) == w.line.points[2] && f(w.line.points[3]) == w.line.points[3] &&
      f(w.line.points[4]) == w.line.points[4])
    EXPECT_FALSE(validate_witness(f, collinear));
  EXPECT_FALSE(validate_witness(GridMap::identity(2, 5), w));
}

TEST(IncidenceProperties, Examples) {
  auto id = check_incidence_properties(GridMap::identity(2, 5));
  EXPECT_TRUE(id.all());
  EXPECT_EQ(id.parallel_classes_checked, 6U);
  EXPECT_GT(id.blocks_checked, 0U);
  auto shear = check_incidence_properties(from_affine(affine({{1, 1}, {0, 1}}, {0, 0}, 7), 2, 7));
  EXPECT_TRUE(shear.parallels_preserved);
  EXPECT_EQ(shear.blocks_preserved, true);
  EXPECT_THROW(check_incidence_properties(with_swap(GridMap::identity(2, 5), 1, 2)), Error);
}

TEST(IncidenceProperties, HoldForAffineMapsInDimensionThree) {
  for (std::uint64_t seed = 0; seed < 4; ++seed)
    for (Int m : {3, 4}) {
      auto r = check_incidence_properties(cli::generate_map(3, m, seed, cli::MapKind::affine));
      EXPECT_TRUE(r.all());
      ASSERT_TRUE(r.subtori_preserved);
      EXPECT_GT(r.subtori_checked, 0U);
    }
  // Free rank-2 summands of (Z/3)^3: 13 planes through 0, 3 cosets each.
  auto r = check_incidence_properties(GridMap::identity(3, 3));
  EXPECT_EQ(r.subtori_checked, 39U);
}

// Parallel classes are compared against an independent recomputation of the
// direction subgroup of every image line.
TEST(IncidenceProperties, ParallelClassesAgreeWithBruteForce) {
  for (Int m : {4, 6}) {
    auto summary = collineation_group(2, m);
    const Grid g(2, m);
    auto direction = [&](std::vector<PointIndex> pts) {
      std::vector<PointIndex> d;
      const PointIndex base = *std::min_element(pts.begin(), pts.end());
      for (PointIndex p : pts) d.push_back(g.sub(p, base));
      std::sort(d.begin(), d.end());
      return d;
    };
    for (const auto& perm : summary.generators) {
      GridMap f(2, m, perm);
      std::map<std::vector<PointIndex>, std::set<std::vector<PointIndex>>> classes;
      for (const auto& l : enumerate_discrete_lines(2, m)) {
        std::vector<PointIndex> img;
        for (PointIndex p : l.points) img.push_back(f(p));
        classes[direction(l.points)].insert(direction(img));
      }
      const bool brute = std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.second.size() == 1; });
      auto r = check_incidence_properties(f);
      EXPECT_EQ(r.parallels_preserved, brute);
      if (is_affine_perm(perm, 2, m)) EXPECT_TRUE(r.parallels_preserved);
    }
  }
}
