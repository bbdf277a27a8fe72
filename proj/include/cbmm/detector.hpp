#pragma once

// Recursive high-degree divide-and-conquer triangle detector.
//
// Each node of the recursion does one of:
//   - exhaustive search when |B| or |C| is below small_threshold;
//   - the table-driven sparse detector when no A-vertex has high degree;
//   - otherwise pick the first high-degree vertex v1 with neighborhoods
//     B1, C1, recurse on two views that together cover B x C minus B1 x C1,
//     and finally scan B1 x C1 for an edge.
// Every (b, c) pair is charged by exactly one leaf or one B1 x C1 scan.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cbmm/bitmat.hpp"
#include "cbmm/errors.hpp"
#include "cbmm/fourruss.hpp"
#include "cbmm/graph.hpp"

namespace cbmm {

/// One high-degree split, recorded when a trace is attached.
struct SplitEvent {
  std::size_t v1 = 0;
  IndexList view_b;
  IndexList view_c;
  std::size_t deg_b = 0;
  std::size_t deg_c = 0;
  bool b_side_larger = false;  // |B1|/|B| > |C1|/|C|
};

struct DetectTrace {
  std::vector<SplitEvent> splits;
};

struct DetectorConfig {
  std::size_t delta = 2;
  std::optional<std::size_t> small_threshold;  // defaults to delta^6
  std::optional<std::size_t> subset_cap;       // defaults to delta
  std::uint64_t table_budget = kDefaultTableBudget;
  bool debug_charge_check = false;
  std::uint64_t charge_check_budget = std::uint64_t{1} << 26;  // max |B0||C0| tracked
  DetectTrace* trace = nullptr;
};

namespace detail {

inline std::size_t pow6_saturating(std::size_t d) noexcept {
  std::uint64_t r = 1;
  for (int i = 0; i < 6; ++i) r = sat_mul(r, d);
  return r > std::numeric_limits<std::size_t>::max() ? std::numeric_limits<std::size_t>::max()
                                                      : static_cast<std::size_t>(r);
}

// Bitset over B0 x C0 marking every pair charged so far in one detect().
class ChargeLedger {
 public:
  ChargeLedger(std::size_t nb, std::size_t nc) : nc_(nc), seen_(words_for(nb * nc), Word{0}) {}

  void charge(const IndexList& bs, const IndexList& cs) {
    for (std::size_t b : bs) {
      for (std::size_t c : cs) {
        const std::size_t idx = b * nc_ + c;
        Word& w = seen_[idx / kWordBits];
        const Word bit = Word{1} << (idx % kWordBits);
        if (w & bit) {
          throw invariant_violation("pair (b" + std::to_string(b) + ", c" + std::to_string(c) +
                                    ") charged twice in one detect");
        }
        w |= bit;
      }
    }
  }

 private:
  std::size_t nc_;
  std::vector<Word> seen_;
};

}  // namespace detail

/// Triple loop over the view using word-parallel C scans.
///
/// triples_enumerated grows by |A||B||C| when the view is triangle-free; on
/// a hit it counts only the volume inspected up to the exit point.
inline Verdict exhaustive_search(const SubInstance& sub, RunStats& stats) {
  if (sub.empty_part()) return Verdict::none();
  const TripartiteGraph& g = sub.graph();
  std::span<const Word> mask_c = sub.mask(Part::C);
  std::vector<Word> c_row(mask_c.size());
  const std::uint64_t nb = sub.size(Part::B), nc = sub.size(Part::C);
  std::uint64_t a_done = 0;
  for (std::size_t a : sub.a()) {
    std::span<const Word> ac = g.ac().row(a);
    for (std::size_t w = 0; w < c_row.size(); ++w) c_row[w] = ac[w] & mask_c[w];
    std::uint64_t b_done = 0;
    for (std::size_t b : sub.b()) {
      ++b_done;
      if (!g.ab().get(a, b)) continue;
      const std::size_t c = first_common_bit(g.bc().row(b), c_row);
      if (c != static_cast<std::size_t>(-1)) {
        stats.triples_enumerated += (a_done * nb + b_done) * nc;
        return Verdict::triangle(a, b, c);
      }
    }
    ++a_done;
  }
  stats.triples_enumerated += sub.volume();
  return Verdict::none();
}

/// Scans B1 x C1 row-major for a B-C edge; charges |B1||C1| pairs.
inline Verdict step4_scan(const TripartiteGraph& g, const IndexList& b1, const IndexList& c1, std::size_t v1,
                          RunStats& stats) {
  stats.pairs_charged += static_cast<std::uint64_t>(b1.size()) * c1.size();
  if (b1.empty() || c1.empty()) return Verdict::none();
  const std::vector<Word> mask = detail::mask_of(c1, g.nc());
  for (std::size_t b : b1) {
    const std::size_t c = first_common_bit(g.bc().row(b), mask);
    if (c != static_cast<std::size_t>(-1)) return Verdict::triangle(v1, b, c);
  }
  return Verdict::none();
}

namespace detail {

class RecursiveDetector {
 public:
  RecursiveDetector(const TripartiteGraph& g, const DetectorConfig& cfg, RunStats& stats)
      : stats_(stats), trace_(cfg.trace) {
    params_.delta = fit_delta(cfg.delta, g.nb(), g.nc(), cfg.subset_cap, cfg.table_budget);
    params_.subset_cap = cfg.subset_cap;
    params_.table_budget = cfg.table_budget;
    delta_ = params_.delta;
    threshold_ = std::max<std::size_t>(1, cfg.small_threshold.value_or(pow6_saturating(delta_)));
    if (cfg.debug_charge_check && sat_mul(g.nb(), g.nc()) <= cfg.charge_check_budget) ledger_.emplace(g.nb(), g.nc());
  }

  Verdict run(const SubInstance& sub) {
    ++stats_.recursion_nodes;
    if (sub.empty_part()) return Verdict::none();

    // Step 0
    if (sub.size(Part::B) < threshold_ || sub.size(Part::C) < threshold_) {
      charge(sub.b(), sub.c());
      return exhaustive_search(sub, stats_);
    }

    // Step 1
    const std::optional<std::size_t> v = check_degree_condition(sub, delta_);
    if (!v) {
      charge(sub.b(), sub.c());
      stats_.pairs_charged += static_cast<std::uint64_t>(sub.size(Part::B)) * sub.size(Part::C);
      return sparse_detect(sub, params_, stats_);
    }

    // Step 2
    const std::size_t v1 = *v;
    IndexList b1 = neighborhood_unchecked(sub, v1, Part::B);
    IndexList c1 = neighborhood_unchecked(sub, v1, Part::C);
    const std::uint64_t nb = sub.size(Part::B), nc = sub.size(Part::C);
    using wide = unsigned __int128;
    if (static_cast<wide>(b1.size()) * c1.size() * delta_ * delta_ <= static_cast<wide>(nb) * nc) {
      throw invariant_violation("selected vertex a" + std::to_string(v1) + " does not violate the degree bound");
    }
    const bool b_larger = static_cast<wide>(b1.size()) * nc > static_cast<wide>(c1.size()) * nb;
    if (trace_ != nullptr) trace_->splits.push_back(SplitEvent{v1, sub.b(), sub.c(), b1.size(), c1.size(), b_larger});

    // Step 3
    IndexList a_rest;
    a_rest.reserve(sub.a().size() - 1);
    for (std::size_t a : sub.a()) {
      if (a != v1) a_rest.push_back(a);
    }
    const IndexList b_rest = complement_in(sub, Part::B, b1);
    const IndexList c_rest = complement_in(sub, Part::C, c1);
    std::pair<SubInstance, SubInstance> branches =
        b_larger ? std::pair{SubInstance(sub.graph(), a_rest, sub.b(), c_rest),
                             SubInstance(sub.graph(), a_rest, b_rest, c1)}
                 : std::pair{SubInstance(sub.graph(), a_rest, b_rest, sub.c()),
                             SubInstance(sub.graph(), a_rest, b1, c_rest)};
    if (Verdict r = run(branches.first); r.found()) return r;
    if (Verdict r = run(branches.second); r.found()) return r;

    // Step 4
    charge(b1, c1);
    return step4_scan(sub.graph(), b1, c1, v1, stats_);
  }

  std::size_t delta() const noexcept { return delta_; }

 private:
  void charge(const IndexList& bs, const IndexList& cs) {
    if (ledger_) ledger_->charge(bs, cs);
  }

  RunStats& stats_;
  DetectTrace* trace_;
  SparseParams params_;
  std::size_t delta_ = 1;
  std::size_t threshold_ = 1;
  std::optional<ChargeLedger> ledger_;
};

}  // namespace detail

/// Reports whether g has a triangle (one vertex per part), with a witness.
///
/// delta is clamped to >= 1 and lowered until the sparse-case table for the
/// full graph fits cfg.table_budget. With debug_charge_check set, a repeated
/// (b, c) charge raises invariant_violation.
inline Verdict detect(const TripartiteGraph& g, const DetectorConfig& cfg, RunStats& stats) {
  detail::RecursiveDetector d(g, cfg, stats);
  return d.run(SubInstance(g));
}

inline Verdict detect(const TripartiteGraph& g, const DetectorConfig& cfg = {}) {
  RunStats stats;
  return detect(g, cfg, stats);
}

}  // namespace cbmm
