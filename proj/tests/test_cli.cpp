#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "torus/collineation.hpp"
#include "torus_cli/commands.hpp"
#include "torus_cli/oracle.hpp"
#include "torus_cli/svg.hpp"
#include "torus_cli/torusmap_io.hpp"

using namespace torus;
using namespace torus::cli;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TORUS_TEST_DATA) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST(Torusmap, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    for (auto kind : {MapKind::affine, MapKind::random}) {
      GridMap f = generate_map(seed % 2 ? 3 : 2, 4 + static_cast<Int>(seed % 3), seed, kind);
      std::string text = emit_torusmap(f);
      EXPECT_EQ(parse_torusmap(text), f);
      EXPECT_EQ(emit_torusmap(parse_torusmap(text)), text);
    }
  EXPECT_EQ(parse_torusmap(slurp(data("identity_n2_m5.torusmap"))), GridMap::identity(2, 5));
}

TEST(Torusmap, StrictParser) {
  const std::string good = emit_torusmap(GridMap::identity(2, 3));
  auto rejects = [](const std::string& text, const std::string& fragment) {
    try {
      parse_torusmap(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const FormatError& e) {
      EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
  };
  rejects("TORUSMAP v2\n" + good.substr(good.find('\n') + 1), "line 1");
  rejects(good.substr(0, good.size() - 1), "line");
  rejects(std::regex_replace(good, std::regex("m=3"), "m=03"), "line 2");
  rejects(std::regex_replace(good, std::regex("\n"), "\r\n"), "line 1");
  rejects(std::regex_replace(good, std::regex("0 1 -> 0 1"), "0 1  -> 0 1"), "line 4");
  rejects(std::regex_replace(good, std::regex("0 1 -> 0 1"), "0 1 -> 0 3"), "line 4");
  rejects(std::regex_replace(good, std::regex("0 1 -> 0 1"), "0 1 -> 0 0"), "");
  rejects(good + "0 0 -> 0 0\n", "line");
  rejects(slurp(data("malformed_unsorted.torusmap")), "line 3");
  try {
    parse_torusmap("TORUSMAP v1\nn=2 m=2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("modulus too small"), std::string::npos);
  }
}

TEST(Generate, DeterministicAndOfTheRequestedKind) {
  EXPECT_EQ(generate_map(2, 7, 5, MapKind::affine), generate_map(2, 7, 5, MapKind::affine));
  EXPECT_NE(generate_map(2, 7, 5, MapKind::affine), generate_map(2, 7, 6, MapKind::affine));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = generate_map(2, 6, seed, MapKind::affine);
    EXPECT_TRUE(is_affine_perm(f.images(), 2, 6));
    auto g = generate_map(2, 7, seed, MapKind::perturbed);
    EXPECT_FALSE(is_affine_perm(g.images(), 2, 7));
  }
  EXPECT_THROW(generate_map(2, 2, 0, MapKind::affine), Error);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(call({"--help"}).code, 0);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"reconstruct", data("identity_n2_m5.torusmap")}).code, 0);
  EXPECT_EQ(call({"reconstruct", data("perturbed_n2_m5.torusmap")}).code, 1);
  EXPECT_EQ(call({"reconstruct", data("malformed_unsorted.torusmap")}).code, 2);
  EXPECT_EQ(call({"verify", data("identity_n2_m5.torusmap"), "--properties"}).code, 0);
  EXPECT_EQ(call({"verify", data("perturbed_n2_m5.torusmap")}).code, 1);
  EXPECT_EQ(call({"search", "--m", "5", "--budget", "10"}).code, 3);
  EXPECT_EQ(call({"search", "--m", "3", "--n", "3"}).code, 2);
  EXPECT_EQ(call({"gen", "--n", "2", "--m", "2"}).code, 2);
}

TEST(Run, ReconstructOutput) {
  auto r = call({"reconstruct", data("neg_shift_n2_m3.torusmap")});
  EXPECT_EQ(r.out, "AFFINE\nn=2 m=3\nA\n-1 0\n0 -1\nb\n1 1\n");
  auto w = call({"reconstruct", data("perturbed_n2_m5.torusmap")});
  EXPECT_TRUE(std::regex_search(w.out, std::regex("^WITNESS\nn=2 m=5\nline base [0-4] [0-4] generator -?[0-4] -?[0-4]")))
      << w.out;
  EXPECT_EQ(occurrences(w.out, " -> "), 3U);
}

TEST(Run, GenThenReconstructRecoversTheMap) {
  auto g = call({"gen", "--n", "3", "--m", "4", "--seed", "9", "--kind", "affine"});
  ASSERT_EQ(g.code, 0);
  GridMap f = parse_torusmap(g.out);
  auto expected = *is_affine_perm(f.images(), 3, 4);
  const std::string path = ::testing::TempDir() + "/gen_affine.torusmap";
  std::ofstream(path, std::ios::binary) << g.out;
  auto r = call({"reconstruct", path});
  ASSERT_EQ(r.code, 0);
  std::string first_row;
  for (std::size_t j = 0; j < 3; ++j) first_row += (j ? " " : "") + std::to_string(expected.matrix()(0, j));
  EXPECT_NE(r.out.find("A\n" + first_row + "\n"), std::string::npos) << r.out;
}

TEST(Run, IntersectOutput) {
  EXPECT_EQ(call({"intersect", "1,0@0", "0,1@0"}).out, "count 1\n(0, 0)\n");
  EXPECT_EQ(call({"intersect", "2,3", "0,1"}).out, "count 2\n(0, 0)\n(0, 1/2)\n");
  EXPECT_EQ(call({"intersect", "(1,1)@0", "(1,1)@(0,1/2)"}).out, "count 0\n");
  EXPECT_EQ(call({"intersect", "(1,1)@0", "(2,2)@(1/2,1/2)"}).out, "count infinite\n");
  EXPECT_EQ(call({"intersect", "1,x@0", "0,1"}).code, 2);
  EXPECT_EQ(call({"intersect", "0,0", "0,1"}).code, 2);
}

TEST(Run, SearchOutput) {
  auto r = call({"search", "--m", "3", "--workers", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("collineation_order 432\naffine_order 432\nindex 1\nnodes ", 0), 0U) << r.out;
  EXPECT_NE(r.err.find("runtime_ms"), std::string::npos);
}

// The CLI oracle and the test-side trace oracle are written independently.
TEST(Oracle, AgreesWithTestOracle) {
  oracle::Gen g(51);
  for (int i = 0; i < 300; ++i) {
    IntVec u = g.nonzero(2, -4, 4), v = g.nonzero(2, -4, 4);
    const IntVec pu = oracle::primitive(u), pv = oracle::primitive(v);
    const Int det = std::abs(pu[0] * pv[1] - pu[1] * pv[0]);
    if (det == 0) continue;
    std::vector<Rational> a{g.unit_rational(6), g.unit_rational(6)}, b{g.unit_rational(6), g.unit_rational(6)};
    OracleLine la{u, a}, lb{v, b};
    const Int bound = oracle_bound(la, lb);
    const Int M = oracle::lcm_den(a, b) * det;
    EXPECT_EQ(bound, M);
    EXPECT_EQ(oracle_count(la, lb), oracle::count_common(oracle::trace(u, a, M), oracle::trace(v, b, M)));
  }
  EXPECT_EQ(oracle_count({{1, 1}, {0, 0}}, {{1, -1}, {0, 0}}), 2);
  EXPECT_EQ(oracle_count({{3, 1}, {0, 0}}, {{1, 2}, {0, 0}}), 5);
  EXPECT_THROW(oracle_count({{1, 1}, {0, 0}}, {{2, 2}, {0, Rational(1, 3)}}), OracleRefusal);
}

TEST(Svg, WrappedSegments) {
  EXPECT_EQ(wrapped_segments({1, 1}, {0, 0}).size(), 1U);
  EXPECT_EQ(wrapped_segments({2, 3}, {0, 0}).size(), 4U);
  EXPECT_EQ(wrapped_segments({1, 0}, {0, Rational(1, 2)}).size(), 1U);
  // Every piece stays in the unit square and pieces chain end to start modulo 1.
  for (const std::vector<Int>& dir : {std::vector<Int>{3, -2}, std::vector<Int>{-1, 4}, std::vector<Int>{5, 3}}) {
    auto segs = wrapped_segments(dir, {Rational(1, 3), Rational(1, 7)});
    Rational len(0);
    for (std::size_t i = 0; i < segs.size(); ++i) {
      const auto& s = segs[i];
      for (const Rational& c : {s.x0, s.y0, s.x1, s.y1}) {
        EXPECT_GE(c, Rational(0));
        EXPECT_LE(c, Rational(1));
      }
      const auto& n = segs[(i + 1) % segs.size()];
      EXPECT_EQ(s.x1.frac(), n.x0.frac());
      EXPECT_EQ(s.y1.frac(), n.y0.frac());
      len += (s.x1 - s.x0) / Rational(dir[0]);
    }
    EXPECT_EQ(len, Rational(1));
  }
}

TEST(Svg, RenderScene) {
  auto scene = nlohmann::json::parse(slurp(data("scene_fig.json")));
  std::string a = render_svg(scene);
  EXPECT_EQ(a, render_svg(scene));
  EXPECT_EQ(a.rfind("<svg", 0), 0U);
  nlohmann::json block = {{"items", {{{"type", "block"}, {"x0", "0"}, {"x1", "1/3"}, {"y0", "0"}, {"y1", "1/3"}}}}};
  std::string b = render_svg(block);
  EXPECT_EQ(occurrences(b, "<line "), 6U);
  EXPECT_EQ(occurrences(b, "<circle "), 4U);
  EXPECT_THROW(render_svg(nlohmann::json::parse(slurp(data("scene_invalid.json")))), SceneError);
  EXPECT_THROW(render_svg(nlohmann::json{{"items", {{{"type", "line"}, {"dir", {0, 0}}}}}}), Error);
  EXPECT_THROW(render_svg(nlohmann::json{{"size", 3}, {"items", nlohmann::json::array()}}), SceneError);
}
