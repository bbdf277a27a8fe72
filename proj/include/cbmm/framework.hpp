#pragma once

// Large-subgraph framework: a pluggable easy-part finder certifies a
// sub-block (A', B', C') as triangle-free (or hands back a triangle), and the
// driver recurses on (A, B, C\C'), (A, B\B', C'), (A\A', B', C'), which
// together with A' x B' x C' partition the parent's triples.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cbmm/detector.hpp"
#include "cbmm/errors.hpp"
#include "cbmm/fourruss.hpp"
#include "cbmm/graph.hpp"
#include "cbmm/oracle.hpp"

namespace cbmm {

struct FinderResult {
  IndexList a;
  IndexList b;
  IndexList c;
  bool triangle_free = true;
  std::optional<Triangle> witness;  // required when !triangle_free
};

/// Contract: given a view, return subsets A' ⊆ A, B' ⊆ B, C' ⊆ C meeting the
/// configured fractions and a truthful verdict for the induced subgraph.
/// Must be safe to call concurrently on distinct views.
class EasyPartFinder {
 public:
  virtual ~EasyPartFinder() = default;
  virtual FinderResult find(const SubInstance& view, RunStats& stats) const = 0;
};

/// Fraction that any nonempty subset satisfies: ceil(f*n) rounds to one vertex.
inline constexpr double kSingleVertexFraction = 1e-12;

/// Recursion node where the driver split around a certified block.
struct FrameworkNode {
  IndexList a, b, c;        // the node's view
  IndexList a1, b1, c1;     // trimmed certified block
};

struct FrameworkTrace {
  std::vector<FrameworkNode> nodes;
};

struct FrameworkConfig {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  // Accept the three fractions assigned to the parts in any order.
  bool any_order = false;
  std::optional<std::uint64_t> small_volume_threshold;  // defaults to ceil(n0^2.5)
  bool debug_verify_finder = false;
  FrameworkTrace* trace = nullptr;

  /// Fractions matching the high-degree finder: one A-vertex, then 1/delta
  /// and 1/delta² spread over B and C in whichever order fits.
  static FrameworkConfig for_high_degree(std::size_t delta) {
    const double d = static_cast<double>(std::max<std::size_t>(1, delta));
    FrameworkConfig cfg;
    cfg.alpha = kSingleVertexFraction;
    cfg.beta = 1.0 / d;
    cfg.gamma = 1.0 / (d * d);
    cfg.any_order = true;
    return cfg;
  }
};

/// ceil(f*n), at least 1 for a nonempty part. The slack absorbs values like
/// (1/3)*9 landing a hair above an integer.
inline std::size_t required_count(double fraction, std::size_t n) {
  if (n == 0) return 0;
  const double x = std::ceil(fraction * static_cast<double>(n) - 1e-9);
  if (x <= 1.0) return 1;
  return std::min(n, static_cast<std::size_t>(x));
}

/// Finder from the high-degree strategy: if some A-vertex v1 has high degree,
/// certify ({v1}, B1, C1) with a pair scan; otherwise certify the whole view
/// with the sparse detector.
class HighDegreeFinder : public EasyPartFinder {
 public:
  explicit HighDegreeFinder(std::size_t delta, std::optional<std::size_t> subset_cap = std::nullopt,
                            std::uint64_t table_budget = kDefaultTableBudget)
      : delta_(std::max<std::size_t>(1, delta)) {
    params_.delta = delta_;
    params_.subset_cap = subset_cap;
    params_.table_budget = table_budget;
  }

  std::size_t delta() const noexcept { return delta_; }

  FinderResult find(const SubInstance& view, RunStats& stats) const override {
    if (auto v = check_degree_condition(view, delta_)) {
      IndexList b1 = detail::neighborhood_unchecked(view, *v, Part::B);
      IndexList c1 = detail::neighborhood_unchecked(view, *v, Part::C);
      Verdict r = step4_scan(view.graph(), b1, c1, *v, stats);
      return FinderResult{{*v}, std::move(b1), std::move(c1), !r.found(), r.witness};
    }
    stats.pairs_charged += static_cast<std::uint64_t>(view.size(Part::B)) * view.size(Part::C);
    Verdict r = sparse_detect(view, params_, stats);
    return FinderResult{view.a(), view.b(), view.c(), !r.found(), r.witness};
  }

 private:
  std::size_t delta_;
  SparseParams params_;
};

inline HighDegreeFinder high_degree_finder(std::size_t delta) { return HighDegreeFinder(delta); }

namespace detail {

class FrameworkDriver {
 public:
  FrameworkDriver(const TripartiteGraph& g, const EasyPartFinder& finder, const FrameworkConfig& cfg, RunStats& stats)
      : finder_(finder), cfg_(cfg), stats_(stats) {
    for (double f : {cfg.alpha, cfg.beta, cfg.gamma}) {
      if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("framework fractions must lie in (0, 1]");
    }
    if (cfg.small_volume_threshold) {
      threshold_ = *cfg.small_volume_threshold;
    } else {
      threshold_ = static_cast<std::uint64_t>(std::ceil(std::pow(static_cast<double>(g.vertex_count()), 2.5)));
    }
  }

  Verdict run(const SubInstance& view) {
    ++stats_.recursion_nodes;
    if (view.empty_part()) return Verdict::none();

    // Step 0
    if (view.volume() < threshold_) return exhaustive_search(view, stats_);

    // Step 1
    FinderResult r = finder_.find(view, stats_);
    check_subset(view.a(), r.a, "A");
    check_subset(view.b(), r.b, "B");
    check_subset(view.c(), r.c, "C");
    if (!r.triangle_free) {
      if (!r.witness || !view.graph().is_triangle(*r.witness) || !contains(r.a, r.witness->a) ||
          !contains(r.b, r.witness->b) || !contains(r.c, r.witness->c)) {
        throw finder_contract_error("finder reported a triangle without a valid witness inside its subgraph");
      }
      return Verdict{r.witness};
    }
    if (cfg_.debug_verify_finder) {
      const Verdict truth = brute_triangle(SubInstance(view.graph(), r.a, r.b, r.c));
      if (truth.found()) throw finder_contract_error("finder certified a subgraph that contains a triangle");
    }

    // Step 2
    const std::array<std::size_t, 3> need = trimmed_sizes(view, r);
    r.a.resize(need[0]);
    r.b.resize(need[1]);
    r.c.resize(need[2]);
    const std::uint64_t na = view.size(Part::A), nb = view.size(Part::B), nc = view.size(Part::C);
    const std::uint64_t covered = na * nb * (nc - r.c.size()) + na * (nb - r.b.size()) * r.c.size() +
                                  (na - r.a.size()) * r.b.size() * r.c.size() +
                                  static_cast<std::uint64_t>(r.a.size()) * r.b.size() * r.c.size();
    if (covered != view.volume()) throw invariant_violation("three-way split does not cover the parent view");
    if (cfg_.trace != nullptr) {
      cfg_.trace->nodes.push_back(FrameworkNode{view.a(), view.b(), view.c(), r.a, r.b, r.c});
    }

    const TripartiteGraph& g = view.graph();
    const IndexList a_rest = complement_in(view, Part::A, r.a);
    const IndexList b_rest = complement_in(view, Part::B, r.b);
    const IndexList c_rest = complement_in(view, Part::C, r.c);
    if (Verdict v = run(SubInstance(g, view.a(), view.b(), c_rest)); v.found()) return v;
    if (Verdict v = run(SubInstance(g, view.a(), b_rest, r.c)); v.found()) return v;
    return run(SubInstance(g, a_rest, r.b, r.c));
  }

 private:
  static bool contains(const IndexList& xs, std::size_t v) { return std::binary_search(xs.begin(), xs.end(), v); }

  static void check_subset(const IndexList& parent, const IndexList& child, const char* part) {
    if (!detail::strictly_increasing(child) || !std::includes(parent.begin(), parent.end(), child.begin(), child.end())) {
      throw finder_contract_error(std::string("finder's ") + part + "' is not a sorted subset of the view");
    }
  }

  // Target sizes ceil(f*|X|) under the first fraction assignment the finder's
  // output satisfies (identity only, unless any_order).
  std::array<std::size_t, 3> trimmed_sizes(const SubInstance& view, const FinderResult& r) const {
    const std::array<double, 3> f{cfg_.alpha, cfg_.beta, cfg_.gamma};
    const std::array<std::size_t, 3> n{view.size(Part::A), view.size(Part::B), view.size(Part::C)};
    const std::array<std::size_t, 3> got{r.a.size(), r.b.size(), r.c.size()};
    std::array<int, 3> perm{0, 1, 2};
    do {
      std::array<std::size_t, 3> need{};
      bool ok = true;
      for (int k = 0; k < 3; ++k) {
        need[k] = required_count(f[perm[k]], n[k]);
        ok = ok && got[k] >= need[k];
      }
      if (ok) return need;
    } while (cfg_.any_order && std::next_permutation(perm.begin(), perm.end()));

    static constexpr const char* kNames[3] = {"A", "B", "C"};
    static constexpr const char* kFrac[3] = {"alpha", "beta", "gamma"};
    for (int k = 0; k < 3; ++k) {
      const std::size_t need = required_count(f[k], n[k]);
      if (got[k] < need) {
        throw finder_contract_error(std::string("|") + kNames[k] + "'| = " + std::to_string(got[k]) + " < ceil(" +
                                    kFrac[k] + "*|" + kNames[k] + "|) = " + std::to_string(need));
      }
    }
    throw finder_contract_error("finder output fits no assignment of the configured fractions");
  }

  const EasyPartFinder& finder_;
  const FrameworkConfig& cfg_;
  RunStats& stats_;
  std::uint64_t threshold_ = 0;
};

}  // namespace detail

/// Detects a triangle by repeatedly asking `finder` for a certified block.
/// Correct for any finder honouring its contract; contract breaches raise
/// finder_contract_error.
inline Verdict detect_with_finder(const TripartiteGraph& g, const EasyPartFinder& finder, const FrameworkConfig& cfg,
                                  RunStats& stats) {
  detail::FrameworkDriver driver(g, finder, cfg, stats);
  return driver.run(SubInstance(g));
}

}  // namespace cbmm
