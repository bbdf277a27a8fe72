#pragma once

// Degree-bounded sparse-case detector built on a Four-Russians lookup table.
//
// B and C (as seen through a view) are cut into contiguous groups of delta^3
// positions. For every subset of at most `cap` positions inside one B-group
// and every such subset inside one C-group, the table records whether some
// B-C edge joins them. An A-vertex's neighborhood is then covered by
// per-group chunks of size cap (plus one remainder per group), and every
// chunk pair costs one lookup.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cbmm/bitmat.hpp"
#include "cbmm/errors.hpp"
#include "cbmm/graph.hpp"

namespace cbmm {

inline constexpr std::uint64_t kDefaultTableBudget = std::uint64_t{1} << 30;  // entries (bits)

struct SparseParams {
  std::size_t delta = 2;
  std::optional<std::size_t> subset_cap;  // defaults to delta
  std::uint64_t table_budget = kDefaultTableBudget;

  std::size_t effective_delta() const noexcept { return std::max<std::size_t>(1, delta); }
  std::size_t cap() const noexcept { return std::max<std::size_t>(1, subset_cap.value_or(effective_delta())); }
};

namespace detail {

inline std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) noexcept {
  return x > std::numeric_limits<std::uint64_t>::max() - y ? std::numeric_limits<std::uint64_t>::max() : x + y;
}

inline std::uint64_t sat_mul(std::uint64_t x, std::uint64_t y) noexcept {
  if (x != 0 && y > std::numeric_limits<std::uint64_t>::max() / x) return std::numeric_limits<std::uint64_t>::max();
  return x * y;
}

inline std::uint64_t binom(std::size_t n, std::size_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step
    const unsigned __int128 next = static_cast<unsigned __int128>(r) * (n - k + i) / i;
    if (next > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    r = static_cast<std::uint64_t>(next);
  }
  return r;
}

inline std::size_t ceil_div(std::size_t x, std::size_t y) noexcept { return (x + y - 1) / y; }

inline std::uint64_t cube(std::size_t x) noexcept { return sat_mul(sat_mul(x, x), x); }

}  // namespace detail

/// First A-vertex (lowest index) of the view with d(v,B)·d(v,C) > |B||C|/delta²,
/// or nothing when every vertex satisfies the bound.
inline std::optional<std::size_t> check_degree_condition(const SubInstance& sub, std::size_t delta) {
  using wide = unsigned __int128;
  const wide d2 = static_cast<wide>(delta) * delta;
  const wide area = static_cast<wide>(sub.size(Part::B)) * sub.size(Part::C);
  for (std::size_t v : sub.a()) {
    const std::size_t db = detail::degree_unchecked(sub, v, Part::B);
    if (db == 0) continue;
    const std::size_t dc = detail::degree_unchecked(sub, v, Part::C);
    if (static_cast<wide>(db) * dc * d2 > area) return v;
  }
  return std::nullopt;
}

/// A subset of one group, packed as (group, offset+1 slots) into a single word.
struct SubsetKey {
  std::uint64_t packed = 0;

  friend bool operator==(const SubsetKey&, const SubsetKey&) = default;
};

/// A piece of a neighborhood lying inside one group. Offsets are local to the group.
struct Chunk {
  std::size_t group = 0;
  IndexList offsets;
};

/// Splits sorted view positions into per-group chunks of exactly `cap` elements
/// plus at most one shorter remainder per group.
inline std::vector<Chunk> partition_into_chunks(std::span<const std::size_t> positions, std::size_t group_size,
                                                std::size_t cap) {
  std::vector<Chunk> out;
  for (std::size_t p : positions) {
    const std::size_t g = p / group_size;
    if (out.empty() || out.back().group != g || out.back().offsets.size() == cap) out.push_back(Chunk{g, {}});
    out.back().offsets.push_back(p % group_size);
  }
  return out;
}

/// Number of entries a table over an nb x nc view would hold.
inline std::uint64_t estimate_table_entries(std::size_t nb, std::size_t nc, std::size_t delta, std::size_t cap) {
  const std::uint64_t gs = detail::cube(std::max<std::size_t>(1, delta));
  std::uint64_t per_group = 0;
  const std::size_t c = static_cast<std::size_t>(std::min<std::uint64_t>(cap, gs));
  for (std::size_t s = 0; s <= c; ++s) per_group = detail::sat_add(per_group, detail::binom(gs, s));
  const std::uint64_t groups_b = nb == 0 ? 0 : (nb + gs - 1) / gs;
  const std::uint64_t groups_c = nc == 0 ? 0 : (nc + gs - 1) / gs;
  return detail::sat_mul(detail::sat_mul(groups_b, groups_c), detail::sat_mul(per_group, per_group));
}

class PairTable;
PairTable build_pair_table(const TripartiteGraph& g, std::span<const std::size_t> view_b,
                           std::span<const std::size_t> view_c, const SparseParams& params);

/// Dense bit table answering "is there an edge between subset S of a B-group
/// and subset S' of a C-group" for every legal (S, S').
///
/// Subsets are ranked by size, then colexicographically, so entry
/// (gB, S, gC, S') sits at ((gB*groups_c + gC)*N + rank(S))*N + rank(S').
class PairTable {
 public:
  std::size_t delta() const noexcept { return delta_; }
  std::size_t group_size() const noexcept { return group_size_; }
  std::size_t subset_cap() const noexcept { return cap_; }
  std::size_t groups_b() const noexcept { return groups_b_; }
  std::size_t groups_c() const noexcept { return groups_c_; }
  std::size_t view_size_b() const noexcept { return size_b_; }
  std::size_t view_size_c() const noexcept { return size_c_; }
  std::uint64_t subsets_per_group() const noexcept { return per_group_; }
  std::uint64_t entry_count() const noexcept { return static_cast<std::uint64_t>(groups_b_) * groups_c_ * per_group_ * per_group_; }

  /// Actual member count of group g on side B or C (the last group may be short).
  std::size_t group_extent(Part side, std::size_t g) const noexcept {
    const std::size_t n = side == Part::B ? size_b_ : size_c_;
    return std::min(group_size_, n - g * group_size_);
  }

  std::uint64_t rank(std::span<const std::size_t> offsets) const noexcept {
    std::uint64_t r = size_prefix_[offsets.size()];
    for (std::size_t i = 0; i < offsets.size(); ++i) r += binom_at(offsets[i], i + 1);
    return r;
  }

  IndexList unrank(std::uint64_t r) const {
    std::size_t s = 0;
    while (s + 1 < size_prefix_.size() && size_prefix_[s + 1] <= r) ++s;
    r -= size_prefix_[s];
    IndexList offsets(s);
    std::size_t hi = group_size_;
    for (std::size_t i = s; i-- > 0;) {
      std::size_t o = hi;
      do {
        --o;
      } while (binom_at(o, i + 1) > r);
      offsets[i] = o;
      r -= binom_at(o, i + 1);
      hi = o;
    }
    return offsets;
  }

  /// Packs a subset of group g. Offsets must be strictly increasing, below the
  /// group's extent, and at most subset_cap() of them.
  SubsetKey encode(Part side, std::size_t group, std::span<const std::size_t> offsets) const {
    const std::size_t groups = side == Part::B ? groups_b_ : groups_c_;
    if (group >= groups) throw std::out_of_range("encode: group " + std::to_string(group) + " out of range");
    if (offsets.size() > cap_) throw std::invalid_argument("encode: subset larger than the subset cap");
    const std::size_t extent = group_extent(side, group);
    std::uint64_t packed = static_cast<std::uint64_t>(group) << (cap_ * slot_bits_);
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      if (offsets[i] >= extent || (i > 0 && offsets[i] <= offsets[i - 1])) {
        throw std::invalid_argument("encode: offsets must be increasing and inside the group");
      }
      packed |= static_cast<std::uint64_t>(offsets[i] + 1) << (i * slot_bits_);
    }
    return SubsetKey{packed};
  }

  std::pair<std::size_t, IndexList> decode(SubsetKey key) const {
    const std::uint64_t slot_mask = (std::uint64_t{1} << slot_bits_) - 1;
    const std::size_t offset_bits = cap_ * slot_bits_;
    const std::size_t group = offset_bits >= 64 ? 0 : static_cast<std::size_t>(key.packed >> offset_bits);
    IndexList offsets;
    for (std::size_t i = 0; i < cap_; ++i) {
      const std::uint64_t v = (key.packed >> (i * slot_bits_)) & slot_mask;
      if (v == 0) break;
      offsets.push_back(static_cast<std::size_t>(v - 1));
    }
    return {group, std::move(offsets)};
  }

  bool lookup(SubsetKey s, SubsetKey t) const {
    auto [gb, ob] = decode(s);
    auto [gc, oc] = decode(t);
    return lookup_ranked(gb, rank(ob), gc, rank(oc));
  }

  bool lookup_ranked(std::size_t gb, std::uint64_t rb, std::size_t gc, std::uint64_t rc) const noexcept {
    const std::uint64_t idx = ((static_cast<std::uint64_t>(gb) * groups_c_ + gc) * per_group_ + rb) * per_group_ + rc;
    return (bits_[idx / kWordBits] >> (idx % kWordBits)) & Word{1};
  }

 private:
  friend PairTable build_pair_table(const TripartiteGraph&, std::span<const std::size_t>, std::span<const std::size_t>,
                                    const SparseParams&);

  std::uint64_t binom_at(std::size_t n, std::size_t k) const noexcept { return binom_[n * (cap_ + 1) + k]; }

  std::size_t delta_ = 1;
  std::size_t group_size_ = 1;
  std::size_t cap_ = 1;
  std::size_t slot_bits_ = 1;
  std::size_t groups_b_ = 0;
  std::size_t groups_c_ = 0;
  std::size_t size_b_ = 0;
  std::size_t size_c_ = 0;
  std::uint64_t per_group_ = 0;
  std::vector<std::uint64_t> binom_;        // (group_size+1) x (cap+1)
  std::vector<std::uint64_t> size_prefix_;  // ranks where each subset size starts; cap+2 entries
  std::vector<Word> bits_;
};

/// Builds the subset-pair table for the B-positions `view_b` x C-positions `view_c`.
///
/// Throws table_budget_error when the table would exceed params.table_budget
/// entries, when a group no longer fits in a machine word (delta^3 > 64), or
/// when a subset key would not fit in one word.
inline PairTable build_pair_table(const TripartiteGraph& g, std::span<const std::size_t> view_b,
                                  std::span<const std::size_t> view_c, const SparseParams& params) {
  PairTable t;
  t.delta_ = params.effective_delta();
  const std::uint64_t gs = detail::cube(t.delta_);
  if (gs > kWordBits) {
    throw table_budget_error("delta=" + std::to_string(t.delta_) + " gives groups of " + std::to_string(gs) +
                             " vertices, more than a machine word; reduce delta");
  }
  t.group_size_ = static_cast<std::size_t>(gs);
  t.cap_ = std::min(params.cap(), t.group_size_);
  t.slot_bits_ = static_cast<std::size_t>(std::bit_width(gs));
  t.size_b_ = view_b.size();
  t.size_c_ = view_c.size();
  t.groups_b_ = detail::ceil_div(view_b.size(), t.group_size_);
  t.groups_c_ = detail::ceil_div(view_c.size(), t.group_size_);

  const std::size_t offset_bits = t.cap_ * t.slot_bits_;
  const std::size_t max_groups = std::max(t.groups_b_, t.groups_c_);
  const std::size_t group_bits = static_cast<std::size_t>(std::bit_width(max_groups == 0 ? 0 : max_groups - 1));
  if (offset_bits + group_bits > 64) {
    throw table_budget_error("subset key needs " + std::to_string(offset_bits + group_bits) +
                             " bits, more than a machine word; reduce delta or subset_cap");
  }

  const std::uint64_t entries = estimate_table_entries(view_b.size(), view_c.size(), t.delta_, t.cap_);
  if (entries > params.table_budget) {
    throw table_budget_error("pair table needs " + std::to_string(entries) + " entries, budget is " +
                             std::to_string(params.table_budget) + "; reduce delta or subset_cap");
  }

  t.binom_.assign((t.group_size_ + 1) * (t.cap_ + 1), 0);
  for (std::size_t n = 0; n <= t.group_size_; ++n) {
    for (std::size_t k = 0; k <= t.cap_; ++k) t.binom_[n * (t.cap_ + 1) + k] = detail::binom(n, k);
  }
  t.size_prefix_.assign(t.cap_ + 2, 0);
  for (std::size_t s = 0; s <= t.cap_; ++s) t.size_prefix_[s + 1] = t.size_prefix_[s] + t.binom_at(t.group_size_, s);
  t.per_group_ = t.size_prefix_[t.cap_ + 1];
  t.bits_.assign(static_cast<std::size_t>(words_for(static_cast<std::size_t>(entries))), Word{0});
  if (entries == 0) return t;

  // Neighbors of each B-position inside each C-group, as group-local bit masks.
  std::vector<Word> nbr(view_b.size() * t.groups_c_, Word{0});
  for (std::size_t p = 0; p < view_b.size(); ++p) {
    for (std::size_t q = 0; q < view_c.size(); ++q) {
      if (g.bc().get(view_b[p], view_c[q])) {
        nbr[p * t.groups_c_ + q / t.group_size_] |= Word{1} << (q % t.group_size_);
      }
    }
  }

  std::vector<Word> subset_mask(static_cast<std::size_t>(t.per_group_), Word{0});
  std::vector<IndexList> subsets(static_cast<std::size_t>(t.per_group_));
  for (std::uint64_t r = 0; r < t.per_group_; ++r) {
    subsets[r] = t.unrank(r);
    for (std::size_t o : subsets[r]) subset_mask[r] |= Word{1} << o;
  }

  const std::uint64_t n = t.per_group_;
  for (std::size_t gb = 0; gb < t.groups_b_; ++gb) {
    const std::size_t extent = t.group_extent(Part::B, gb);
    for (std::uint64_t rb = 0; rb < n; ++rb) {
      for (std::size_t gc = 0; gc < t.groups_c_; ++gc) {
        Word reach = 0;
        for (std::size_t o : subsets[rb]) {
          if (o < extent) reach |= nbr[(gb * t.group_size_ + o) * t.groups_c_ + gc];
        }
        if (reach == 0) continue;
        const std::uint64_t base = ((static_cast<std::uint64_t>(gb) * t.groups_c_ + gc) * n + rb) * n;
        for (std::uint64_t rc = 0; rc < n; ++rc) {
          if ((reach & subset_mask[rc]) != 0) {
            const std::uint64_t idx = base + rc;
            t.bits_[idx / kWordBits] |= Word{1} << (idx % kWordBits);
          }
        }
      }
    }
  }
  return t;
}

/// Largest delta in [1, requested] whose full-view table fits the word-size
/// and entry-budget limits for parts of size nb x nc.
inline std::size_t fit_delta(std::size_t requested, std::size_t nb, std::size_t nc,
                             std::optional<std::size_t> subset_cap, std::uint64_t budget) {
  for (std::size_t d = std::max<std::size_t>(1, requested); d > 1; --d) {
    if (detail::cube(d) > kWordBits) continue;
    const std::size_t cap = std::min<std::size_t>(std::max<std::size_t>(1, subset_cap.value_or(d)), d * d * d);
    if (estimate_table_entries(nb, nc, d, cap) <= budget) return d;
  }
  return 1;
}

/// Table-driven sparse detector: every A-vertex of the view must satisfy
/// d(v,B)·d(v,C) <= |B||C|/delta² (verified in debug builds).
inline Verdict sparse_detect(const SubInstance& sub, const SparseParams& params, RunStats& stats) {
  ++stats.sparse_calls;
#ifndef NDEBUG
  if (auto v = check_degree_condition(sub, params.effective_delta())) {
    throw invariant_violation("sparse_detect: vertex a" + std::to_string(*v) + " violates the degree bound");
  }
#endif
  if (sub.empty_part()) return Verdict::none();

  const TripartiteGraph& g = sub.graph();
  const PairTable table = build_pair_table(g, sub.b(), sub.c(), params);
  const std::size_t gs = table.group_size();
  const std::size_t cap = table.subset_cap();

  // original index -> view position
  std::vector<std::size_t> pos_b(g.nb(), 0), pos_c(g.nc(), 0);
  for (std::size_t p = 0; p < sub.b().size(); ++p) pos_b[sub.b()[p]] = p;
  for (std::size_t q = 0; q < sub.c().size(); ++q) pos_c[sub.c()[q]] = q;

  struct Ranked {
    std::size_t group;
    std::uint64_t rank;
    IndexList offsets;
  };
  auto chunks_for = [&](std::size_t v, Part part, const std::vector<std::size_t>& pos) {
    IndexList positions;
    for (std::size_t x : detail::neighborhood_unchecked(sub, v, part)) positions.push_back(pos[x]);
    std::vector<Ranked> out;
    for (Chunk& ch : partition_into_chunks(positions, gs, cap)) {
      const std::uint64_t r = table.rank(ch.offsets);
      out.push_back(Ranked{ch.group, r, std::move(ch.offsets)});
    }
    return out;
  };

  for (std::size_t a : sub.a()) {
    const std::vector<Ranked> cb = chunks_for(a, Part::B, pos_b);
    if (cb.empty()) continue;
    const std::vector<Ranked> cc = chunks_for(a, Part::C, pos_c);
    for (const Ranked& x : cb) {
      for (const Ranked& y : cc) {
        ++stats.table_queries;
        if (!table.lookup_ranked(x.group, x.rank, y.group, y.rank)) continue;
        for (std::size_t ob : x.offsets) {
          const std::size_t b = sub.b()[x.group * gs + ob];
          for (std::size_t oc : y.offsets) {
            const std::size_t c = sub.c()[y.group * gs + oc];
            if (g.bc().get(b, c)) return Verdict::triangle(a, b, c);
          }
        }
        throw invariant_violation("pair table reported an edge that the chunk pair does not contain");
      }
    }
  }
  return Verdict::none();
}

}  // namespace cbmm
