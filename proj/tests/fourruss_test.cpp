#include <gtest/gtest.h>

#include <set>

#include "cbmm/fourruss.hpp"
#include "cbmm/oracle.hpp"
#include "cbmm/random.hpp"
#include "test_util.hpp"

using namespace cbmm;
using cbmm::testing::random_subset;
using cbmm::testing::scalar_degree;

namespace {

// Exhaustive subset-pair check straight from the adjacency bits.
bool subsets_joined(const TripartiteGraph& g, const IndexList& vb, const IndexList& vc, const PairTable& t,
                    std::size_t gb, const IndexList& ob, std::size_t gc, const IndexList& oc) {
  for (std::size_t x : ob) {
    for (std::size_t y : oc) {
      if (g.bc().get(vb[gb * t.group_size() + x], vc[gc * t.group_size() + y])) return true;
    }
  }
  return false;
}

bool fits(const PairTable& t, Part side, std::size_t group, const IndexList& offsets) {
  return offsets.empty() || offsets.back() < t.group_extent(side, group);
}

// Compares every legal table entry with subsets_joined; returns mismatches.
std::size_t count_table_mismatches(const TripartiteGraph& g, const IndexList& vb, const IndexList& vc,
                                   const PairTable& t) {
  std::size_t bad = 0;
  for (std::size_t gb = 0; gb < t.groups_b(); ++gb) {
    for (std::uint64_t rb = 0; rb < t.subsets_per_group(); ++rb) {
      const IndexList ob = t.unrank(rb);
      if (!fits(t, Part::B, gb, ob)) continue;
      for (std::size_t gc = 0; gc < t.groups_c(); ++gc) {
        for (std::uint64_t rc = 0; rc < t.subsets_per_group(); ++rc) {
          const IndexList oc = t.unrank(rc);
          if (!fits(t, Part::C, gc, oc)) continue;
          const bool want = subsets_joined(g, vb, vc, t, gb, ob, gc, oc);
          if (t.lookup(t.encode(Part::B, gb, ob), t.encode(Part::C, gc, oc)) != want) ++bad;
        }
      }
    }
  }
  return bad;
}

IndexList iota(std::size_t n) {
  IndexList xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = i;
  return xs;
}

}  // namespace

TEST(DegreeCondition, EdgelessHolds) {
  const TripartiteGraph g(10, 10, 10);
  for (std::size_t d : {1, 2, 5}) EXPECT_FALSE(check_degree_condition(SubInstance(g), d).has_value());
}

TEST(DegreeCondition, CompleteViolatesAtFirstVertex) {
  const TripartiteGraph g = cbmm::testing::complete(8, 8, 8);
  EXPECT_EQ(check_degree_condition(SubInstance(g), 2), std::optional<std::size_t>{0});
}

TEST(DegreeCondition, MatchesScalarScan) {
  InstanceRng rng(100);
  for (int trial = 0; trial < 10; ++trial) {
    const TripartiteGraph g = random_tripartite(rng, 100, 100, 100, 0.2 + 0.05 * trial);
    const SubInstance view(g);
    std::optional<std::size_t> want;
    for (std::size_t a = 0; a < 100 && !want; ++a) {
      const std::size_t db = scalar_degree(g, a, Part::B, view.b()), dc = scalar_degree(g, a, Part::C, view.c());
      if (db * dc * 9 > 100 * 100) want = a;
    }
    EXPECT_EQ(check_degree_condition(view, 3), want);
  }
}

TEST(PairTable, EdgelessIsAllZero) {
  const TripartiteGraph g(1, 20, 20);
  SparseParams p;
  const PairTable t = build_pair_table(g, iota(20), iota(20), p);
  EXPECT_EQ(t.group_size(), 8u);
  EXPECT_EQ(t.groups_b(), 3u);
  EXPECT_EQ(count_table_mismatches(g, iota(20), iota(20), t), 0u);
  for (std::uint64_t r = 0; r < t.subsets_per_group(); ++r) EXPECT_FALSE(t.lookup_ranked(0, r, 1, r));
}

TEST(PairTable, CompleteBipartiteIsAllOnesOffEmpty) {
  const TripartiteGraph g = cbmm::testing::complete(1, 17, 17);
  SparseParams p;
  const PairTable t = build_pair_table(g, iota(17), iota(17), p);
  for (std::size_t gb = 0; gb < t.groups_b(); ++gb) {
    for (std::size_t gc = 0; gc < t.groups_c(); ++gc) {
      for (std::uint64_t rb = 0; rb < t.subsets_per_group(); ++rb) {
        const IndexList ob = t.unrank(rb);
        if (!ob.empty() && ob.back() >= t.group_extent(Part::B, gb)) continue;
        for (std::uint64_t rc = 0; rc < t.subsets_per_group(); ++rc) {
          const IndexList oc = t.unrank(rc);
          if (!oc.empty() && oc.back() >= t.group_extent(Part::C, gc)) continue;
          ASSERT_EQ(t.lookup_ranked(gb, rb, gc, rc), !ob.empty() && !oc.empty());
        }
      }
    }
  }
}

TEST(PairTable, Random40x40Delta2MatchesExhaustiveCheck) {
  InstanceRng rng(40);
  const TripartiteGraph g = random_tripartite(rng, 1, 40, 40, 0.1);
  SparseParams p;
  p.delta = 2;
  const PairTable t = build_pair_table(g, iota(40), iota(40), p);
  EXPECT_EQ(count_table_mismatches(g, iota(40), iota(40), t), 0u);
}

TEST(PairTable, NonContiguousViewAndReducedCap) {
  InstanceRng rng(41);
  const TripartiteGraph g = random_tripartite(rng, 1, 50, 50, 0.15);
  const IndexList vb = random_subset(rng, 50, 0.6), vc = random_subset(rng, 50, 0.6);
  SparseParams p;
  p.delta = 3;
  p.subset_cap = 2;
  const PairTable t = build_pair_table(g, vb, vc, p);
  EXPECT_EQ(t.subset_cap(), 2u);
  EXPECT_EQ(t.subsets_per_group(), 1u + 27u + 351u);
  EXPECT_EQ(count_table_mismatches(g, vb, vc, t), 0u);
}

TEST(PairTable, RankUnrankRoundTripAndEncodingInjective) {
  const TripartiteGraph g(1, 64, 64);
  SparseParams p;
  p.delta = 3;
  const PairTable t = build_pair_table(g, iota(64), iota(64), p);
  std::set<std::uint64_t> keys;
  for (std::size_t group = 0; group < t.groups_b(); ++group) {
    for (std::uint64_t r = 0; r < t.subsets_per_group(); ++r) {
      const IndexList offsets = t.unrank(r);
      ASSERT_EQ(t.rank(offsets), r);
      if (!offsets.empty() && offsets.back() >= t.group_extent(Part::B, group)) continue;
      const SubsetKey k = t.encode(Part::B, group, offsets);
      ASSERT_TRUE(keys.insert(k.packed).second);
      auto [dg, doffs] = t.decode(k);
      ASSERT_EQ(dg, group);
      ASSERT_EQ(doffs, offsets);
    }
  }
}

TEST(PairTable, EncodeRejectsIllegalSubsets) {
  const TripartiteGraph g(1, 10, 10);
  SparseParams p;
  const PairTable t = build_pair_table(g, iota(10), iota(10), p);
  const IndexList too_many{0, 1, 2};
  const IndexList unsorted{3, 1};
  const IndexList past_extent{2};  // group 1 has only 2 members
  EXPECT_THROW(t.encode(Part::B, 0, too_many), std::invalid_argument);
  EXPECT_THROW(t.encode(Part::B, 0, unsorted), std::invalid_argument);
  EXPECT_THROW(t.encode(Part::B, 1, past_extent), std::invalid_argument);
  EXPECT_THROW(t.encode(Part::B, 2, IndexList{}), std::out_of_range);
}

TEST(PairTable, BudgetExceededIsStructuredError) {
  const TripartiteGraph g(1, 60, 60);
  SparseParams p;
  p.delta = 3;
  p.table_budget = 1000;
  try {
    (void)build_pair_table(g, iota(60), iota(60), p);
    FAIL() << "expected table_budget_error";
  } catch (const table_budget_error& e) {
    EXPECT_NE(std::string(e.what()).find("reduce delta"), std::string::npos);
  }
  p.delta = 5;  // 125-vertex groups do not fit a word
  p.table_budget = kDefaultTableBudget;
  EXPECT_THROW((void)build_pair_table(g, iota(60), iota(60), p), table_budget_error);
}

TEST(FitDelta, LowersDeltaUnderBudget) {
  EXPECT_EQ(fit_delta(2, 100, 100, std::nullopt, kDefaultTableBudget), 2u);
  EXPECT_EQ(fit_delta(0, 100, 100, std::nullopt, kDefaultTableBudget), 1u);
  EXPECT_EQ(fit_delta(9, 100, 100, std::nullopt, kDefaultTableBudget), 3u);
  EXPECT_EQ(fit_delta(3, 100, 100, std::nullopt, 1000), 1u);
}

// Chunk partition: complete, disjoint, group-local, capped, and within the
// groups + ceil(d/cap) count bound.
TEST(ChunkProperty, PartitionIsCompleteAndBounded) {
  InstanceRng rng(55);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t delta = rng.uniform(1, 4);
    const std::size_t gs = delta * delta * delta;
    const std::size_t cap = rng.uniform(1, delta + 1);
    const std::size_t n = rng.uniform(0, 300);
    const IndexList positions = random_subset(rng, n, rng.coin(0.5) ? 0.1 : 0.7);
    const std::vector<Chunk> chunks = partition_into_chunks(positions, gs, cap);
    IndexList rebuilt;
    for (const Chunk& ch : chunks) {
      ASSERT_FALSE(ch.offsets.empty());
      ASSERT_LE(ch.offsets.size(), cap);
      for (std::size_t o : ch.offsets) {
        ASSERT_LT(o, gs);
        rebuilt.push_back(ch.group * gs + o);
      }
    }
    ASSERT_EQ(rebuilt, positions);  // sorted concatenation => disjoint and complete
    const std::size_t groups = (n + gs - 1) / gs;
    ASSERT_LE(chunks.size(), groups + (positions.size() + cap - 1) / cap);
  }
}

TEST(SparseDetect, SingleTriangleDelta1) {
  const TripartiteGraph g = cbmm::testing::single_triangle();
  SparseParams p;
  p.delta = 1;
  RunStats stats;
  EXPECT_EQ(sparse_detect(SubInstance(g), p, stats), Verdict::triangle(0, 0, 0));
  EXPECT_EQ(stats.sparse_calls, 1u);
  EXPECT_EQ(stats.table_queries, 1u);
}

TEST(SparseDetect, NoBCEdgesIsTriangleFree) {
  TripartiteGraph g = cbmm::testing::complete(6, 6, 6);
  for (std::size_t b = 0; b < 6; ++b) {
    for (std::size_t c = 0; c < 6; ++c) g.set_edge(PartPair::BC, b, c, false);
  }
  SparseParams p;
  p.delta = 1;
  RunStats stats;
  EXPECT_FALSE(sparse_detect(SubInstance(g), p, stats).found());
}

TEST(SparseDetect, Random60MeetingBoundMatchesBruteForce) {
  InstanceRng rng(60);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const double p = trial % 3 == 0 ? 0.02 : (trial % 3 == 1 ? 0.1 : 0.3);
    const TripartiteGraph g = random_tripartite(rng, 60, 60, 60, p);
    const SubInstance view(g);
    if (check_degree_condition(view, 2)) continue;
    SparseParams sp;
    sp.delta = 2;
    RunStats stats;
    const Verdict v = sparse_detect(view, sp, stats);
    ASSERT_EQ(v.found(), brute_triangle(g).found());
    if (v.found()) {
      ASSERT_TRUE(g.is_triangle(*v.witness));
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(SparseDetect, ViewsMatchBruteForce) {
  InstanceRng rng(61);
  for (int trial = 0; trial < 200; ++trial) {
    const TripartiteGraph g = random_tripartite(rng, 30, 45, 45, 0.15);
    const SubInstance view(g, random_subset(rng, 30, 0.7), random_subset(rng, 45, 0.7), random_subset(rng, 45, 0.7));
    SparseParams sp;
    sp.delta = check_degree_condition(view, 2) ? 1 : 2;
    RunStats stats;
    const Verdict v = sparse_detect(view, sp, stats);
    ASSERT_EQ(v.found(), brute_triangle(view).found());
    if (v.found()) {
      ASSERT_TRUE(g.is_triangle(*v.witness));
      ASSERT_TRUE(view.contains(Part::A, v.witness->a) && view.contains(Part::B, v.witness->b) &&
                  view.contains(Part::C, v.witness->c));
    }
  }
}
