#include "torus/collineation.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace torus {

std::uint64_t default_node_budget() {
  const char* env = std::getenv("TORUS_AFFINE_BUDGET");
  if (!env || !*env) return kDefaultNodeBudget;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used == std::string(env).size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  throw Error("TORUS_AFFINE_BUDGET must be a positive integer");
}

Int affine_group_order(std::size_t n, Int m) {
  if (m < 2) throw Error("affine_group_order needs m >= 2");
  if (n == 0) throw Error("affine_group_order needs n >= 1");
  Int order = 1;
  for (std::size_t i = 0; i < n; ++i) order = checked::mul(order, m);
  Int rest = m;
  for (Int p = 2; rest > 1; ++p) {
    if (p * p > rest) p = rest;
    if (rest % p != 0) continue;
    Int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    // |GL_n(Z/p^e)| = p^((e-1) n^2) * prod_{i<n} (p^n - p^i).
    Int pn = 1;
    for (std::size_t i = 0; i < n; ++i) pn = checked::mul(pn, p);
    Int pi = 1;
    for (std::size_t i = 0; i < n; ++i) {
      order = checked::mul(order, checked::sub(pn, pi));
      pi = checked::mul(pi, p);
    }
    for (Int k = 0; k < (e - 1) * static_cast<Int>(n * n); ++k) order = checked::mul(order, p);
  }
  return order;
}

std::optional<AffineTorusAuto> is_affine_perm(std::span<const PointIndex> perm, std::size_t n, Int m) {
  const Grid grid(n, m);
  if (perm.size() != grid.size()) throw Error("permutation size does not match the grid");
  const PointIndex b = perm[0];
  std::vector<IntVec> columns;
  for (std::size_t i = 0; i < n; ++i) columns.push_back(grid.point(grid.sub(perm[grid.unit(i)], b)));
  const IntMatrix a = balanced(IntMatrix::from_columns(columns, n), m);
  for (PointIndex x = 0; x < grid.size(); ++x)
    if (grid.add(grid.index(a * grid.point(x)), b) != perm[x]) return std::nullopt;
  if (gcd(determinant(a), m) != 1) return std::nullopt;
  return AffineTorusAuto::modular(a, grid.point(b), m);
}

namespace {

constexpr int kUnassigned = -1;

/// Backtracking over images of points with 0 fixed at 0. Each line keeps the
/// set of image lines still compatible with its assigned points.
class Search {
 public:
  struct State {
    std::vector<int> image;
    std::vector<std::uint64_t> used;        // point words
    std::vector<std::uint64_t> candidates;  // lines x line words
    std::vector<std::uint8_t> assigned;     // per line
  };

  Search(const IncidenceStructure& inc, std::uint64_t budget, std::atomic<std::uint64_t>& global)
      : inc_(inc), budget_(budget), global_(global) {
    const std::size_t points = inc.grid().size();
    const std::size_t lines = inc.lines().size();
    pw_ = (points + 63) / 64;
    lw_ = (lines + 63) / 64;
    through_.assign(points * lw_, 0);
    for (std::size_t p = 0; p < points; ++p)
      for (std::uint32_t l : inc.lines_through(static_cast<PointIndex>(p))) through_[p * lw_ + l / 64] |= bit(l);
    const Grid& g = inc.grid();
    order_ = {g.unit(0), g.unit(1), g.add(g.unit(0), g.unit(1))};
  }

  State root() const {
    State s;
    s.image.assign(inc_.grid().size(), kUnassigned);
    s.used.assign(pw_, 0);
    s.candidates.assign(inc_.lines().size() * lw_, ~std::uint64_t{0});
    s.assigned.assign(inc_.lines().size(), 0);
    return s;
  }

  bool assign(State& s, PointIndex p, PointIndex q) const {
    s.image[p] = static_cast<int>(q);
    s.used[q / 64] |= bit(q);
    for (std::uint32_t l : inc_.lines_through(p)) {
      std::uint64_t any = 0;
      for (std::size_t w = 0; w < lw_; ++w) any |= (s.candidates[l * lw_ + w] &= through_[q * lw_ + w]);
      if (!any) return false;
      ++s.assigned[l];
    }
    return true;
  }

  /// Candidate images of p, as point words.
  std::vector<std::uint64_t> domain(const State& s, PointIndex p) const {
    const std::size_t points = inc_.grid().size();
    std::vector<std::uint64_t> d(pw_);
    for (std::size_t w = 0; w < pw_; ++w) d[w] = ~s.used[w];
    if (points % 64) d[pw_ - 1] &= (std::uint64_t{1} << (points % 64)) - 1;
    std::vector<std::uint64_t> cover(pw_);
    for (std::uint32_t l : inc_.lines_through(p)) {
      if (s.assigned[l] < 2) continue;
      std::fill(cover.begin(), cover.end(), 0);
      for (std::size_t w = 0; w < lw_; ++w) {
        std::uint64_t word = s.candidates[l * lw_ + w];
        while (word) {
          const std::size_t target = w * 64 + static_cast<std::size_t>(std::countr_zero(word));
          word &= word - 1;
          const auto& mask = inc_.line_mask(target).words();
          for (std::size_t k = 0; k < pw_; ++k) cover[k] |= mask[k];
        }
      }
      for (std::size_t k = 0; k < pw_; ++k) d[k] &= cover[k];
    }
    return d;
  }

  const std::vector<PointIndex>& fixed_order() const { return order_; }

  /// Visits the subtree below s. `stage` indexes fixed_order() until it is
  /// exhausted, after which the most constrained point is chosen.
  void explore(const State& s, std::size_t stage, bool identity_path, std::vector<PointIndex>* capture,
               bool capture_open) {
    count_node();
    PointIndex chosen = 0;
    std::vector<std::uint64_t> dom;
    if (stage < order_.size()) {
      chosen = order_[stage];
      dom = domain(s, chosen);
    } else {
      bool found = false;
      std::size_t best = ~std::size_t{0};
      for (PointIndex p = 0; p < inc_.grid().size(); ++p) {
        if (s.image[p] != kUnassigned) continue;
        auto d = domain(s, p);
        std::size_t size = 0;
        for (auto w : d) size += static_cast<std::size_t>(std::popcount(w));
        if (size < best) {
          best = size;
          chosen = p;
          dom = std::move(d);
          found = true;
          if (size <= 1) break;
        }
      }
      if (!found) {
        ++leaves_;
        if (capture_open && capture && capture->empty()) {
          capture->reserve(s.image.size());
          for (int q : s.image) capture->push_back(static_cast<PointIndex>(q));
        }
        return;
      }
    }
    for (std::size_t w = 0; w < dom.size(); ++w) {
      std::uint64_t word = dom[w];
      while (word) {
        const auto q = static_cast<PointIndex>(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
        word &= word - 1;
        State child = s;
        if (!assign(child, chosen, q)) continue;
        if (identity_path && q != chosen) {
          generators_.emplace_back();
          explore(child, stage + 1, false, &generators_.back(), true);
          if (generators_.back().empty()) generators_.pop_back();
        } else {
          explore(child, stage + 1, identity_path, capture, capture_open);
        }
      }
    }
  }

  void flush() {
    const std::uint64_t total = global_.fetch_add(pending_) + pending_;
    nodes_ += pending_;
    pending_ = 0;
    if (total > budget_) throw BudgetExceeded("search node budget of " + std::to_string(budget_) + " exceeded");
  }

  std::uint64_t nodes() const { return nodes_ + pending_; }
  std::uint64_t leaves() const { return leaves_; }
  std::vector<std::vector<PointIndex>>& generators() { return generators_; }

 private:
  static std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i & 63); }

  void count_node() {
    if (++pending_ >= 4096) flush();
  }

  const IncidenceStructure& inc_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& global_;
  std::size_t pw_ = 0, lw_ = 0;
  std::vector<std::uint64_t> through_;
  std::vector<PointIndex> order_;
  std::uint64_t pending_ = 0, nodes_ = 0, leaves_ = 0;
  std::vector<std::vector<PointIndex>> generators_;
};

struct BranchResult {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::vector<std::vector<PointIndex>> generators;
};

}  // namespace

GroupSummary collineation_group(std::size_t n, Int m, const SearchOptions& options) {
  if (n != 2) throw Error("exhaustive collineation search is implemented for n = 2 only");
  if (m < 3) throw Error("modulus too small");
  auto inc = IncidenceStructure::shared(n, m);
  const Grid& grid = inc->grid();
  std::atomic<std::uint64_t> global{0};

  Search top(*inc, options.node_budget, global);
  Search::State root = top.root();
  if (!top.assign(root, 0, 0)) throw Error("internal: cannot fix the origin");
  const PointIndex e1 = top.fixed_order()[0];
  std::vector<PointIndex> branches;
  {
    auto dom = top.domain(root, e1);
    for (PointIndex q = 0; q < grid.size(); ++q)
      if ((dom[q / 64] >> (q % 64)) & 1U) branches.push_back(q);
  }

  std::vector<BranchResult> results(branches.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::atomic<bool> stop{false};

  auto worker = [&] {
    try {
      for (std::size_t i; !stop.load() && (i = next.fetch_add(1)) < branches.size();) {
        Search search(*inc, options.node_budget, global);
        Search::State child = root;
        BranchResult& r = results[i];
        if (search.assign(child, e1, branches[i])) {
          if (branches[i] == e1) {
            search.explore(child, 1, true, nullptr, false);
          } else {
            std::vector<PointIndex> slot;
            search.explore(child, 1, false, &slot, true);
            if (!slot.empty()) search.generators().push_back(std::move(slot));
          }
        }
        search.flush();
        r.nodes = search.nodes();
        r.leaves = search.leaves();
        r.generators = std::move(search.generators());
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      stop = true;
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  GroupSummary summary;
  summary.nodes = 1;
  std::uint64_t leaves = 0;
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<PointIndex> shift(grid.size());
    for (PointIndex x = 0; x < grid.size(); ++x) shift[x] = grid.add(x, grid.unit(t));
    summary.generators.push_back(std::move(shift));
  }
  for (auto& r : results) {
    summary.nodes += r.nodes;
    leaves += r.leaves;
    for (auto& g : r.generators) summary.generators.push_back(std::move(g));
  }
  if (summary.nodes > options.node_budget)
    throw BudgetExceeded("search node budget of " + std::to_string(options.node_budget) + " exceeded");
  summary.order = checked::mul(static_cast<Int>(grid.size()), static_cast<Int>(leaves));
  summary.affine_order = affine_group_order(n, m);
  summary.index = summary.order % summary.affine_order == 0 ? summary.order / summary.affine_order : 0;
  return summary;
}

}  // namespace torus
