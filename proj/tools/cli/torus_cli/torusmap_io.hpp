#pragma once

// TORUSMAP v1: a bijection of G_m as text.
//
//   TORUSMAP v1
//   n=<n> m=<m>
//   x_1 ... x_n -> y_1 ... y_n      (m^n records, sorted by source)
//
// Residues are integers in [0, m); single spaces; LF line endings.

#include <string>
#include <string_view>

#include "torus/discrete.hpp"

namespace torus::cli {

class FormatError : public Error {
 public:
  using Error::Error;
};

/// Strict parser. Throws FormatError with a line number on any deviation.
GridMap parse_torusmap(std::string_view text);

std::string emit_torusmap(const GridMap& f);

}  // namespace torus::cli
