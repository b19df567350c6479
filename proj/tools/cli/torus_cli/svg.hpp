#pragma once

// Static SVG figures of the fundamental domain [0,1]^2 of T^2.
//
// Scene document (JSON):
//   {"size": 400,
//    "items": [
//      {"type": "line", "dir": [2, 3], "base": ["0", "1/2"], "stroke": "#1f77b4", "width": 2},
//      {"type": "point", "at": ["1/3", "1/3"], "r": 4, "fill": "#d62728"},
//      {"type": "block", "x0": "0", "x1": "1/3", "y0": "0", "y1": "1/3"}]}
//
// Coordinates are exact rationals given as strings or integers.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "torus/rational.hpp"

namespace torus::cli {

class SceneError : public Error {
 public:
  using Error::Error;
};

struct Segment {
  Rational x0, y0, x1, y1;
};

/// The closed pieces of base + t dir, t in [0, 1], cut at every integer
/// crossing and translated into the unit square.
std::vector<Segment> wrapped_segments(const std::vector<Int>& dir, const std::vector<Rational>& base);

/// Throws SceneError on an invalid scene.
std::string render_svg(const nlohmann::json& scene);

}  // namespace torus::cli
