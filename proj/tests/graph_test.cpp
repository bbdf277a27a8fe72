#include <gtest/gtest.h>

#include <algorithm>

#include "cbmm/graph.hpp"
#include "cbmm/oracle.hpp"
#include "cbmm/random.hpp"
#include "test_util.hpp"

using namespace cbmm;
using cbmm::testing::random_subset;
using cbmm::testing::scalar_degree;
using cbmm::testing::single_triangle;

TEST(Graph, SingleTriangle) {
  const TripartiteGraph g = single_triangle();
  EXPECT_TRUE(g.is_triangle({0, 0, 0}));
  EXPECT_TRUE(brute_triangle(g).found());
}

TEST(Graph, EdgelessAndDuplicates) {
  const TripartiteGraph g = from_edge_list(2, 2, 2, {});
  EXPECT_EQ(g.ab().count() + g.ac().count() + g.bc().count(), 0u);
  const TripartiteGraph d = from_edge_list(2, 2, 2, {{PartPair::AB, 1, 0}, {PartPair::AB, 1, 0}});
  EXPECT_EQ(d.ab().count(), 1u);
}

TEST(Graph, OutOfRangeEndpointThrows) {
  EXPECT_THROW(from_edge_list(1, 1, 1, {{PartPair::BC, 0, 1}}), std::out_of_range);
}

TEST(Graph, DegreeSumsEqualEdgeCounts) {
  InstanceRng rng(30);
  const TripartiteGraph g = random_tripartite(rng, 30, 30, 30, 0.2);
  const SubInstance full(g);
  std::size_t sum_b = 0, sum_c = 0, scalar_b = 0, scalar_c = 0;
  for (std::size_t a = 0; a < 30; ++a) {
    sum_b += degree(full, a, Part::B);
    sum_c += degree(full, a, Part::C);
    for (std::size_t x = 0; x < 30; ++x) {
      scalar_b += g.ab().get(a, x);
      scalar_c += g.ac().get(a, x);
    }
  }
  EXPECT_EQ(sum_b, scalar_b);
  EXPECT_EQ(sum_c, scalar_c);
  EXPECT_EQ(sum_b, g.ab().count());
}

TEST(Graph, GeneralGraphConstruction) {
  const std::vector<std::pair<std::size_t, std::size_t>> tri = {{0, 1}, {1, 2}, {0, 2}};
  EXPECT_TRUE(brute_triangle(from_general(3, tri)).found());
  const std::vector<std::pair<std::size_t, std::size_t>> path = {{0, 1}, {1, 2}, {2, 3}};
  EXPECT_FALSE(brute_triangle(from_general(4, path)).found());
  const std::vector<std::pair<std::size_t, std::size_t>> loop = {{1, 1}};
  EXPECT_THROW(from_general(2, loop), std::invalid_argument);
}

TEST(Degree, SmallCases) {
  const TripartiteGraph g = single_triangle();
  EXPECT_EQ(degree(SubInstance(g), 0, Part::B), 1u);
  const TripartiteGraph e(3, 3, 3);
  EXPECT_EQ(degree(SubInstance(e), 2, Part::C), 0u);
}

TEST(Degree, VertexOutsideViewThrows) {
  const TripartiteGraph g(3, 3, 3);
  const SubInstance v(g, {0, 2}, {0}, {1});
  EXPECT_THROW(degree(v, 1, Part::B), std::invalid_argument);
  EXPECT_THROW(neighborhood(v, 1, Part::C), std::invalid_argument);
  EXPECT_THROW(degree(v, 0, Part::A), std::invalid_argument);
}

TEST(Neighborhood, SmallCases) {
  const TripartiteGraph g = single_triangle();
  EXPECT_EQ(neighborhood(SubInstance(g), 0, Part::B), IndexList{0});
  const TripartiteGraph e(2, 2, 2);
  EXPECT_TRUE(neighborhood(SubInstance(e), 0, Part::B).empty());
}

// Properties over random views: degree agrees with a scalar count, and the
// neighborhood with its complement partitions the view's part.
TEST(ViewProperty, DegreeAndNeighborhoodPartition) {
  InstanceRng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t na = rng.uniform(1, 70), nb = rng.uniform(1, 140), nc = rng.uniform(1, 140);
    const TripartiteGraph g = random_tripartite(rng, na, nb, nc, 0.3);
    IndexList ia = random_subset(rng, na, 0.6);
    if (ia.empty()) ia.push_back(0);
    const SubInstance view(g, ia, random_subset(rng, nb, 0.5), random_subset(rng, nc, 0.5));
    const std::size_t v = ia[rng.uniform(0, ia.size() - 1)];
    for (Part part : {Part::B, Part::C}) {
      const IndexList nbrs = neighborhood(view, v, part);
      ASSERT_EQ(degree(view, v, part), scalar_degree(g, v, part, view.indices(part)));
      ASSERT_EQ(degree(view, v, part), nbrs.size());
      const IndexList rest = complement_in(view, part, nbrs);
      IndexList merged;
      std::merge(nbrs.begin(), nbrs.end(), rest.begin(), rest.end(), std::back_inserter(merged));
      ASSERT_EQ(merged, view.indices(part));
      for (std::size_t x : nbrs) ASSERT_TRUE(part == Part::B ? g.ab().get(v, x) : g.ac().get(v, x));
      for (std::size_t x : rest) ASSERT_FALSE(part == Part::B ? g.ab().get(v, x) : g.ac().get(v, x));
    }
  }
}

TEST(Restrict, FullListsGiveSameView) {
  InstanceRng rng(1);
  const TripartiteGraph g = random_tripartite(rng, 5, 6, 7, 0.5);
  const SubInstance full(g);
  const SubInstance same = restrict(full, full.a(), full.b(), full.c());
  EXPECT_EQ(same.a(), full.a());
  EXPECT_EQ(same.b(), full.b());
  EXPECT_EQ(same.c(), full.c());
  EXPECT_EQ(&same.graph(), &g);
}

TEST(Restrict, EmptyAIsTriangleFree) {
  const TripartiteGraph g = single_triangle();
  const SubInstance v = restrict(SubInstance(g), {}, {0}, {0});
  EXPECT_TRUE(v.empty_part());
  EXPECT_FALSE(brute_triangle(v).found());
}

TEST(Restrict, RemovingNeighborhoodKillsTheTriangle) {
  const TripartiteGraph g = single_triangle();
  const SubInstance full(g);
  const IndexList c1 = neighborhood(full, 0, Part::C);
  const SubInstance v = restrict(full, full.a(), full.b(), complement_in(full, Part::C, c1));
  EXPECT_FALSE(brute_triangle(v).found());
}

TEST(Restrict, NonSubsetThrows) {
  const TripartiteGraph g(4, 4, 4);
  const SubInstance v(g, {0, 1}, {0, 1}, {0, 1});
  EXPECT_THROW(restrict(v, {0, 2}, {0}, {0}), std::invalid_argument);
  EXPECT_THROW(restrict(v, {1, 0}, {0}, {0}), std::invalid_argument);
}

TEST(SubInstance, RejectsBadLists) {
  const TripartiteGraph g(4, 4, 4);
  EXPECT_THROW(SubInstance(g, {0, 0}, {}, {}), std::invalid_argument);
  EXPECT_THROW(SubInstance(g, {}, {4}, {}), std::out_of_range);
}

// Property: a triangle inside a restricted view is a triangle in the parent.
TEST(ViewProperty, RestrictIsMonotone) {
  InstanceRng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const TripartiteGraph g = random_tripartite(rng, 12, 12, 12, 0.4);
    const SubInstance full(g);
    const SubInstance narrow =
        restrict(full, random_subset(rng, 12, 0.5), random_subset(rng, 12, 0.5), random_subset(rng, 12, 0.5));
    if (brute_triangle(narrow).found()) {
      ASSERT_TRUE(brute_triangle(full).found());
    }
  }
}
