#pragma once

// The `torus` command-line front end, callable in-process.
//
// Exit codes: 0 success, 1 the map is not affine (witness or non-affine
// verdict), 2 malformed input or usage, 3 search budget exceeded.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "torus/discrete.hpp"

namespace torus::cli {

enum class MapKind { affine, perturbed, random };

/// Deterministic sample for a seed; identical across platforms.
GridMap generate_map(std::size_t n, Int m, std::uint64_t seed, MapKind kind);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace torus::cli
