#pragma once

// Brute-force intersection of two rational lines: enumerate both traces on
// the grid of denominator M and intersect the sets. Deliberately shares no
// code with the lattice machinery so it can serve as an oracle for it.

#include <optional>
#include <vector>

#include "torus/rational.hpp"

namespace torus::cli {

struct OracleLine {
  std::vector<Int> dir;
  std::vector<Rational> base;
};

/// Raised for parallel input, on which the trace method says nothing finite.
class OracleRefusal : public Error {
 public:
  using Error::Error;
};

/// lcm of base denominators times the gcd of the 2x2 minors of the
/// primitive directions (|det| in the plane).
Int oracle_bound(const OracleLine& a, const OracleLine& b);

/// |trace_M(a) ∩ trace_M(b)| with M = bound, or oracle_bound(a, b) when unset.
Int oracle_count(const OracleLine& a, const OracleLine& b, std::optional<Int> bound = std::nullopt);

}  // namespace torus::cli
