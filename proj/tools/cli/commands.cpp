#include "torus_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "torus/collineation.hpp"
#include "torus/geometry.hpp"
#include "torus/reconstruction.hpp"
#include "torus_cli/oracle.hpp"
#include "torus_cli/svg.hpp"
#include "torus_cli/torusmap_io.hpp"

namespace torus::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

/// Uniform integers from mt19937_64 by rejection, so output does not depend on
/// the standard library's distribution implementations.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - (max % n + 1) % n;
    std::uint64_t v;
    do v = rng_();
    while (v > limit);
    return v % n;
  }

 private:
  std::mt19937_64 rng_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write " + path);
}

std::string residues(const IntVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

void print_witness(const GridMap& f, const Witness& w, std::ostream& out) {
  const Grid& g = f.grid();
  out << "WITNESS\nn=" << f.dim() << " m=" << f.modulus() << "\n";
  out << "line base " << residues(g.point(w.line.base)) << " generator " << residues(g.point(w.line.generator))
      << "\n";
  if (!w.triple) {
    out << "triple none\n";
    return;
  }
  out << "triple\n";
  for (PointIndex p : *w.triple) out << residues(g.point(p)) << " -> " << residues(g.point(f(p))) << "\n";
}

void print_affine(const AffineTorusAuto& a, std::ostream& out) {
  out << "AFFINE\nn=" << a.dim() << " m=" << *a.modulus() << "\nA\n";
  for (std::size_t r = 0; r < a.dim(); ++r) out << residues(a.matrix().row(r)) << "\n";
  out << "b\n" << residues(a.translation_residues()) << "\n";
}

// "2,3@0,1/2", optional parentheses around either part; base defaults to 0.
struct ParsedLine {
  IntVec dir;
  RatVec base;
};

std::string strip_parens(std::string s) {
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

ParsedLine parse_line_arg(const std::string& arg) {
  const auto at = arg.find('@');
  const std::string dir_text = strip_parens(arg.substr(0, at));
  ParsedLine line;
  for (const auto& tok : split(dir_text, ',')) {
    Rational r = Rational::parse(tok);
    if (!r.is_integer()) throw UsageError("direction entries must be integers: " + tok);
    line.dir.push_back(r.num());
  }
  if (line.dir.size() < 2) throw UsageError("a direction needs at least two entries: " + arg);
  if (at == std::string::npos || strip_parens(arg.substr(at + 1)) == "0") {
    line.base.assign(line.dir.size(), Rational(0));
  } else {
    for (const auto& tok : split(strip_parens(arg.substr(at + 1)), ',')) line.base.push_back(Rational::parse(tok));
    if (line.base.size() != line.dir.size()) throw UsageError("base and direction dimensions differ: " + arg);
  }
  return line;
}

int cmd_intersect(const std::string& a_text, const std::string& b_text, std::ostream& out) {
  const ParsedLine pa = parse_line_arg(a_text), pb = parse_line_arg(b_text);
  if (pa.dir.size() != pb.dir.size()) throw UsageError("lines live in different dimensions");
  const RationalLine a = line_through(RatPoint::reduce(pa.base), pa.dir);
  const RationalLine b = line_through(RatPoint::reduce(pb.base), pb.dir);
  if (a == b) {
    out << "count infinite\n";
    return 0;
  }
  const auto points = intersection_points(a, b);
  const IntersectionCount count =
      a.dim() == 2 ? intersection_count_2d(a, b) : IntersectionCount::finite(static_cast<Int>(points.size()));
  if (count.value() != static_cast<Int>(points.size())) throw Error("internal: count and point list disagree");
  out << "count " << count.to_string() << "\n";
  for (const auto& p : points) out << p.to_string() << "\n";
  return 0;
}

int cmd_oracle(const std::string& a_text, const std::string& b_text, Int bound, std::ostream& out) {
  const ParsedLine pa = parse_line_arg(a_text), pb = parse_line_arg(b_text);
  if (pa.dir.size() != pb.dir.size()) throw UsageError("lines live in different dimensions");
  const OracleLine a{pa.dir, pa.base}, b{pb.dir, pb.base};
  const Int m = bound > 0 ? bound : oracle_bound(a, b);
  out << "denominator " << m << "\ncount " << oracle_count(a, b, m) << "\n";
  return 0;
}

int cmd_reconstruct(const std::string& path, std::ostream& out) {
  const GridMap f = parse_torusmap(read_file(path));
  const Inference result = infer_affine(f);
  if (const auto* a = std::get_if<AffineTorusAuto>(&result)) {
    print_affine(*a, out);
    return 0;
  }
  if (const auto* w = std::get_if<Witness>(&result)) {
    print_witness(f, *w, out);
    return 1;
  }
  out << "NONAFFINE\nn=" << f.dim() << " m=" << f.modulus() << "\nevery discrete line maps onto a discrete line\n";
  return 1;
}

int cmd_verify(const std::string& path, bool properties, std::size_t workers, std::ostream& out) {
  const GridMap f = parse_torusmap(read_file(path));
  if (auto w = verify_line_preserving(f, workers)) {
    print_witness(f, *w, out);
    return 1;
  }
  out << "LINE_PRESERVING\nn=" << f.dim() << " m=" << f.modulus() << "\n";
  if (properties) {
    const PropertyReport r = check_incidence_properties(f);
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    out << "parallels " << flag(r.parallels_preserved) << " classes " << r.parallel_classes_checked << "\n";
    if (r.blocks_preserved) out << "blocks " << flag(*r.blocks_preserved) << " checked " << r.blocks_checked << "\n";
    if (r.subtori_preserved)
      out << "subtori " << flag(*r.subtori_preserved) << " checked " << r.subtori_checked << "\n";
  }
  return 0;
}

int cmd_search(std::size_t n, Int m, std::size_t workers, std::uint64_t budget, std::ostream& out, std::ostream& err) {
  SearchOptions options;
  options.workers = workers;
  options.node_budget = budget > 0 ? budget : default_node_budget();
  const auto start = std::chrono::steady_clock::now();
  const GroupSummary s = collineation_group(n, m, options);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  out << "collineation_order " << s.order << "\naffine_order " << s.affine_order << "\nindex ";
  if (s.index > 0)
    out << s.index;
  else
    out << Rational(s.order, s.affine_order).to_string();
  out << "\nnodes " << s.nodes << "\ngenerators " << s.generators.size() << "\n";
  err << "runtime_ms " << ms << "\n";
  return 0;
}

int cmd_svg(const std::string& path, const std::string& out_path, std::ostream& out) {
  nlohmann::json scene;
  try {
    scene = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw SceneError(std::string("invalid JSON: ") + e.what());
  }
  write_output(out_path, render_svg(scene), out);
  return 0;
}

}  // namespace

GridMap generate_map(std::size_t n, Int m, std::uint64_t seed, MapKind kind) {
  if (m < 3) throw Error("modulus too small");
  const Grid grid(n, m);
  Draw draw(seed);
  std::vector<PointIndex> image(grid.size());
  const auto um = static_cast<std::uint64_t>(m);

  if (kind == MapKind::random) {
    std::iota(image.begin(), image.end(), PointIndex{0});
    for (PointIndex i = grid.size(); i > 1; --i) std::swap(image[i - 1], image[draw.below(i)]);
    return GridMap(n, m, std::move(image));
  }

  IntMatrix a(n, n);
  do {
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = balanced_residue(static_cast<Int>(draw.below(um)), m);
  } while (gcd(determinant(a), m) != 1);
  IntVec b(n);
  for (auto& c : b) c = static_cast<Int>(draw.below(um));
  const AffineTorusAuto phi = AffineTorusAuto::modular(a, b, m);
  for (PointIndex x = 0; x < grid.size(); ++x) image[x] = grid.index(phi.apply_residues(grid.point(x)));

  if (kind == MapKind::perturbed) {
    const auto u = static_cast<PointIndex>(draw.below(grid.size()));
    auto v = static_cast<PointIndex>(draw.below(grid.size() - 1));
    if (v >= u) ++v;
    std::swap(image[u], image[v]);
  }
  return GridMap(n, m, std::move(image));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact geometry of rational lines and subtori on the torus, and affine reconstruction of grid maps",
               "torus"};
  app.require_subcommand(1);

  std::size_t n = 2, workers = 1;
  Int m = 0, bound = 0;
  std::uint64_t seed = 0, budget = 0;
  std::string kind = "affine", path, out_path, line_a, line_b;
  bool properties = false;

  auto* gen = app.add_subcommand("gen", "Write a TORUSMAP v1 file");
  gen->add_option("--n", n, "Dimension")->check(CLI::Range(2, 8));
  gen->add_option("--m", m, "Modulus")->required();
  gen->add_option("--seed", seed, "Random seed");
  gen->add_option("--kind", kind, "affine | perturbed | random")->check(CLI::IsMember({"affine", "perturbed", "random"}));
  gen->add_option("--out", out_path, "Output file (default: stdout)");

  auto* rec = app.add_subcommand("reconstruct", "Recover the affine map of a TORUSMAP file or print a witness");
  rec->add_option("file", path)->required();

  auto* ver = app.add_subcommand("verify", "Check that a TORUSMAP file maps discrete lines onto discrete lines");
  ver->add_option("file", path)->required();
  ver->add_flag("--properties", properties, "Also check parallels, blocks and subtori");
  ver->add_option("--workers", workers, "Scan workers")->check(CLI::Range(1, 256));

  auto* isec = app.add_subcommand("intersect", "Intersect two rational lines, given as dir@base");
  isec->add_option("line1", line_a)->required();
  isec->add_option("line2", line_b)->required();

  auto* orc = app.add_subcommand("oracle", "Brute-force intersection count of two non-parallel lines");
  orc->add_option("line1", line_a)->required();
  orc->add_option("line2", line_b)->required();
  orc->add_option("--bound", bound, "Grid denominator (default: lcm of base denominators times the minor gcd)")
      ->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "Exhaustive collineation group of (Z/m)^2");
  search->add_option("--n", n, "Dimension (2 only)");
  search->add_option("--m", m, "Modulus")->required();
  search->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1, 256));
  search->add_option("--budget", budget, "Search node limit (default 1e9 or TORUS_AFFINE_BUDGET)")
      ->check(CLI::PositiveNumber);

  auto* svg = app.add_subcommand("svg", "Render a JSON scene as SVG");
  svg->add_option("scene", path)->required();
  svg->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      const MapKind k = kind == "affine" ? MapKind::affine : kind == "perturbed" ? MapKind::perturbed : MapKind::random;
      write_output(out_path, emit_torusmap(generate_map(n, m, seed, k)), out);
      return 0;
    }
    if (rec->parsed()) return cmd_reconstruct(path, out);
    if (ver->parsed()) return cmd_verify(path, properties, workers, out);
    if (isec->parsed()) return cmd_intersect(line_a, line_b, out);
    if (orc->parsed()) return cmd_oracle(line_a, line_b, bound, out);
    if (search->parsed()) return cmd_search(n, m, workers, budget, out, err);
    if (svg->parsed()) return cmd_svg(path, out_path, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace torus::cli
