#include "torus_cli/torusmap_io.hpp"

#include <charconv>
#include <memory>
#include <vector>

namespace torus::cli {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw FormatError("line " + std::to_string(line) + ": " + what);
}

/// Decimal integer without sign or leading zeros.
bool parse_natural(std::string_view s, Int& out) {
  if (s.empty() || (s.size() > 1 && s[0] == '0')) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t sp = s.find(' ', start);
    out.push_back(s.substr(start, sp - start));
    if (sp == std::string_view::npos) break;
    start = sp + 1;
  }
  return out;
}

}  // namespace

GridMap parse_torusmap(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) fail(lines.size() + 1, "missing final line feed");
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  if (lines.empty() || lines[0] != "TORUSMAP v1") fail(1, "expected header \"TORUSMAP v1\"");
  if (lines.size() < 2) fail(2, "missing \"n=<n> m=<m>\" line");

  auto dims = split_spaces(lines[1]);
  Int n = 0, m = 0;
  if (dims.size() != 2 || !dims[0].starts_with("n=") || !dims[1].starts_with("m=") ||
      !parse_natural(dims[0].substr(2), n) || !parse_natural(dims[1].substr(2), m))
    fail(2, "expected \"n=<n> m=<m>\"");
  if (n < 2) fail(2, "dimension must be at least 2");
  if (m < 3) fail(2, "modulus too small");

  std::unique_ptr<Grid> grid;
  try {
    grid = std::make_unique<Grid>(static_cast<std::size_t>(n), m);
  } catch (const Error& e) {
    fail(2, e.what());
  }
  const PointIndex size = grid->size();
  if (lines.size() - 2 != size)
    fail(lines.size() + 1, "expected " + std::to_string(size) + " records, found " + std::to_string(lines.size() - 2));

  std::vector<PointIndex> image(size);
  for (PointIndex i = 0; i < size; ++i) {
    const std::size_t ln = i + 3;
    auto tok = split_spaces(lines[i + 2]);
    if (tok.size() != 2 * static_cast<std::size_t>(n) + 1 || tok[n] != "->") fail(ln, "malformed record");
    IntVec x(n), y(n);
    for (Int k = 0; k < n; ++k) {
      if (!parse_natural(tok[k], x[k]) || x[k] >= m) fail(ln, "source residue out of range");
      if (!parse_natural(tok[n + 1 + k], y[k]) || y[k] >= m) fail(ln, "target residue out of range");
    }
    if (grid->index(x) != i) fail(ln, "records must list sources in lexicographic order");
    image[i] = grid->index(y);
  }
  try {
    return GridMap(static_cast<std::size_t>(n), m, std::move(image));
  } catch (const Error& e) {
    throw FormatError(e.what());
  }
}

std::string emit_torusmap(const GridMap& f) {
  const Grid& grid = f.grid();
  std::string out = "TORUSMAP v1\nn=" + std::to_string(f.dim()) + " m=" + std::to_string(f.modulus()) + "\n";
  for (PointIndex i = 0; i < grid.size(); ++i) {
    for (Int c : grid.point(i)) out += std::to_string(c) + ' ';
    out += "->";
    for (Int c : grid.point(f(i))) out += ' ' + std::to_string(c);
    out += '\n';
  }
  return out;
}

}  // namespace torus::cli
