#pragma once

// Exhaustive collineation groups of the discrete plane ((Z/m)^2, discrete
// lines), compared against the affine group AGL_2(Z/m).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "torus/affine.hpp"
#include "torus/discrete.hpp"

namespace torus {

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000;

/// kDefaultNodeBudget, or TORUS_AFFINE_BUDGET when set to a positive integer.
std::uint64_t default_node_budget();

struct SearchOptions {
  std::size_t workers = 1;
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct GroupSummary {
  Int order = 0;
  /// Permutations (image index per point) generating the group.
  std::vector<std::vector<PointIndex>> generators;
  Int affine_order = 0;
  Int index = 0;
  /// Search nodes visited; identical for every worker count.
  std::uint64_t nodes = 0;
};

/// Order of the group of bijections mapping every discrete line onto a
/// discrete line. Requires n == 2 and m >= 3. Throws BudgetExceeded when the
/// search would visit more than options.node_budget nodes.
GroupSummary collineation_group(std::size_t n, Int m, const SearchOptions& options = {});

/// m^n |GL_n(Z/m)|. Requires m >= 2.
Int affine_group_order(std::size_t n, Int m);

/// The affine map x -> A x + b agreeing with perm everywhere, if any.
std::optional<AffineTorusAuto> is_affine_perm(std::span<const PointIndex> perm, std::size_t n, Int m);

}  // namespace torus
