#include "torus_cli/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace torus::cli {

namespace {

Rational rational_field(const nlohmann::json& v, const char* what) {
  try {
    if (v.is_number_integer()) return Rational(v.get<Int>());
    if (v.is_string()) return Rational::parse(v.get<std::string>());
  } catch (const Error&) {
  }
  throw SceneError(std::string("invalid rational in ") + what);
}

std::vector<Rational> rational_pair(const nlohmann::json& item, const char* key) {
  if (!item.contains(key) || !item[key].is_array() || item[key].size() != 2)
    throw SceneError(std::string("\"") + key + "\" must be a pair");
  return {rational_field(item[key][0], key), rational_field(item[key][1], key)};
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

double to_double(const Rational& r) { return static_cast<double>(r.num()) / static_cast<double>(r.den()); }

std::string style(const nlohmann::json& item, const char* key, const std::string& fallback) {
  if (!item.contains(key)) return fallback;
  if (item[key].is_string()) {
    std::string s = item[key].get<std::string>();
    if (s.empty() || s.find_first_of("\"<>&") != std::string::npos) throw SceneError(std::string("invalid ") + key);
    return s;
  }
  if (item[key].is_number()) return number(item[key].get<double>());
  throw SceneError(std::string("invalid ") + key);
}

}  // namespace

std::vector<Segment> wrapped_segments(const std::vector<Int>& dir, const std::vector<Rational>& base) {
  if (dir.size() != 2 || base.size() != 2) throw SceneError("lines are drawn in T^2 only");
  Int g = std::gcd(dir[0], dir[1]);
  if (g == 0) throw SceneError("line direction must be nonzero");
  const Int d[2] = {dir[0] / g, dir[1] / g};
  const Rational b[2] = {base[0].frac(), base[1].frac()};

  std::vector<Rational> cuts{Rational(0), Rational(1)};
  for (int i = 0; i < 2; ++i) {
    if (d[i] == 0) continue;
    // b_i + t d_i = k for integer k, t in (0, 1).
    const Int lo = std::min<Int>(0, d[i]), hi = std::max<Int>(0, d[i]);
    for (Int k = lo - 1; k <= hi + 1; ++k) {
      Rational t = (Rational(k) - b[i]) / Rational(d[i]);
      if (Rational(0) < t && t < Rational(1)) cuts.push_back(t);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Segment> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational mid = (cuts[i] + cuts[i + 1]) / Rational(2);
    const Rational off[2] = {Rational((b[0] + mid * Rational(d[0])).floor()),
                             Rational((b[1] + mid * Rational(d[1])).floor())};
    auto at = [&](const Rational& t, int k) { return b[k] + t * Rational(d[k]) - off[k]; };
    out.push_back({at(cuts[i], 0), at(cuts[i], 1), at(cuts[i + 1], 0), at(cuts[i + 1], 1)});
  }
  return out;
}

std::string render_svg(const nlohmann::json& scene) {
  if (!scene.is_object() || !scene.contains("items") || !scene["items"].is_array())
    throw SceneError("scene must be an object with an \"items\" array");
  Int size = 400;
  if (scene.contains("size")) {
    if (!scene["size"].is_number_integer() || scene["size"].get<Int>() < 16 || scene["size"].get<Int>() > 8192)
      throw SceneError("\"size\" must be an integer in [16, 8192]");
    size = scene["size"].get<Int>();
  }
  const double s = static_cast<double>(size);
  auto X = [&](const Rational& x) { return number(to_double(x) * s); };
  auto Y = [&](const Rational& y) { return number((1.0 - to_double(y)) * s); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
     << size << ' ' << size << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << size << "\" height=\"" << size
     << "\" fill=\"white\" stroke=\"black\" stroke-width=\"1\"/>\n";

  auto segment = [&](const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1,
                     const std::string& stroke, const std::string& width) {
    os << "<line x1=\"" << X(x0) << "\" y1=\"" << Y(y0) << "\" x2=\"" << X(x1) << "\" y2=\"" << Y(y1)
       << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\"/>\n";
  };

  for (const auto& item : scene["items"]) {
    if (!item.is_object() || !item.contains("type") || !item["type"].is_string())
      throw SceneError("every item needs a \"type\"");
    const std::string type = item["type"].get<std::string>();
    if (type == "line") {
      if (!item.contains("dir") || !item["dir"].is_array() || item["dir"].size() != 2 ||
          !item["dir"][0].is_number_integer() || !item["dir"][1].is_number_integer())
        throw SceneError("\"dir\" must be a pair of integers");
      std::vector<Int> dir{item["dir"][0].get<Int>(), item["dir"][1].get<Int>()};
      std::vector<Rational> base = item.contains("base") ? rational_pair(item, "base")
                                                         : std::vector<Rational>{Rational(0), Rational(0)};
      const std::string stroke = style(item, "stroke", "black"), width = style(item, "width", "2");
      os << "<g class=\"line\">\n";
      for (const Segment& seg : wrapped_segments(dir, base)) segment(seg.x0, seg.y0, seg.x1, seg.y1, stroke, width);
      os << "</g>\n";
    } else if (type == "point") {
      auto at = rational_pair(item, "at");
      os << "<circle cx=\"" << X(at[0].frac()) << "\" cy=\"" << Y(at[1].frac()) << "\" r=\"" << style(item, "r", "4")
         << "\" fill=\"" << style(item, "fill", "black") << "\"/>\n";
    } else if (type == "block") {
      Rational x0 = rational_field(item.value("x0", nlohmann::json()), "x0").frac();
      Rational x1 = rational_field(item.value("x1", nlohmann::json()), "x1").frac();
      Rational y0 = rational_field(item.value("y0", nlohmann::json()), "y0").frac();
      Rational y1 = rational_field(item.value("y1", nlohmann::json()), "y1").frac();
      if (x0 == x1 || y0 == y1) throw SceneError("block corners must be distinct");
      const std::string stroke = style(item, "stroke", "black"), width = style(item, "width", "1");
      os << "<g class=\"block\">\n";
      segment(x0, y0, x1, y0, stroke, width);
      segment(x0, y1, x1, y1, stroke, width);
      segment(x0, y0, x0, y1, stroke, width);
      segment(x1, y0, x1, y1, stroke, width);
      segment(x0, y0, x1, y1, stroke, width);
      segment(x1, y0, x0, y1, stroke, width);
      for (const auto& [x, y] : {std::pair{x0, y0}, std::pair{x1, y0}, std::pair{x0, y1}, std::pair{x1, y1}})
        os << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"3\" fill=\"" << stroke << "\"/>\n";
      os << "</g>\n";
    } else {
      throw SceneError("unknown item type \"" + type + "\"");
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace torus::cli
