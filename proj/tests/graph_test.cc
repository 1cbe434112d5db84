// Copyright 2026 The dpgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpgraph/graph.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_util.h"

namespace dpgraph {
namespace {

using testing::Dense;
using testing::RandomGraph;

TEST(EdgeIndex, Examples) {
  EXPECT_EQ(EdgeIndexOf(0, 1, 4), 0u);
  EXPECT_EQ(EdgeIndexOf(2, 3, 4), 5u);
  EXPECT_EQ(EdgeIndexOf(1, 0, 4), 0u);
  EXPECT_EQ(EdgeIndexOf(0, 3, 4), 2u);
  EXPECT_EQ(EdgeIndexOf(1, 2, 4), 3u);
  EXPECT_EQ(NumSlots(4), 6u);
  EXPECT_EQ(NumSlots(1), 0u);
}

TEST(EdgeIndex, Errors) {
  EXPECT_THROW(EdgeIndexOf(1, 1, 4), std::invalid_argument);
  EXPECT_THROW(EdgeIndexOf(0, 4, 4), std::invalid_argument);
  EXPECT_THROW(EdgeIndexOf(-1, 2, 4), std::invalid_argument);
}

TEST(EdgeIndex, RoundTripAllPairsUpTo64) {
  for (Vertex n = 2; n <= 64; ++n) {
    EdgeIndex expected = 0;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v, ++expected) {
        const EdgeIndex e = EdgeIndexOf(u, v, n);
        ASSERT_EQ(e, expected);
        ASSERT_EQ(EdgeEndpoints(e, n), std::make_pair(u, v));
      }
    }
    ASSERT_EQ(expected, NumSlots(n));
  }
}

TEST(EdgeIndex, LargeNRoundTrip) {
  const Vertex n = 100'000;
  for (EdgeIndex e : {EdgeIndex{0}, NumSlots(n) / 3, NumSlots(n) - 1}) {
    const auto [u, v] = EdgeEndpoints(e, n);
    EXPECT_EQ(EdgeIndexOf(u, v, n), e);
  }
}

TEST(PrivacyBudget, Validates) {
  EXPECT_NO_THROW(PrivacyBudget(1.0, 0.5));
  EXPECT_THROW(PrivacyBudget(0.0, 0.5), std::invalid_argument);
  EXPECT_THROW(PrivacyBudget(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(PrivacyBudget(1.0, 1.0), std::invalid_argument);
}

TEST(WeightedGraph, DropsNonPositiveAndSumsDuplicates) {
  auto g = WeightedGraph::FromEntries(4, {{3, 1.0}, {0, 2.0}, {3, 0.5}, {1, 0.0},
                                          {2, -1.0}});
  ASSERT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.edges()[0].index, 0u);
  EXPECT_EQ(g.edges()[1].index, 3u);
  EXPECT_DOUBLE_EQ(g.weight(3), 1.5);
  EXPECT_EQ(g.weight(1), 0.0);
  for (const Edge& e : g.edges()) EXPECT_GT(e.weight, 0);
  EXPECT_THROW(WeightedGraph::FromEntries(4, {{6, 1.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedGraph::FromEntries(4, {{0, NAN}}), std::invalid_argument);
}

TEST(WeightedGraph, Degrees) {
  auto g = WeightedGraph::FromTriples(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 2}});
  EXPECT_EQ(g.max_degree(), 3);
  EXPECT_EQ(g.degrees(), (std::vector<std::int64_t>{3, 1, 1, 1}));
  EXPECT_DOUBLE_EQ(g.total_weight(), 4);
}

TEST(VertexSet, RejectsBadInput) {
  EXPECT_THROW(VertexSet(3, {0, 0}), std::invalid_argument);
  EXPECT_THROW(VertexSet(3, {3}), std::invalid_argument);
  VertexSet s(5, {1, 3});
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(3));
  EXPECT_FALSE(s.contains(0));
}

TEST(Cut, Examples) {
  auto k3 = WeightedGraph::FromTriples(3, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
  EXPECT_DOUBLE_EQ(CutValue(k3, VertexSet(3, {0})), 2);
  auto path = WeightedGraph::FromTriples(3, {{0, 1, 5}, {1, 2, 7}});
  EXPECT_DOUBLE_EQ(CutValue(path, VertexSet(3, {1})), 12);
  EXPECT_DOUBLE_EQ(CutValue(path, VertexSet(3)), 0);
  EXPECT_DOUBLE_EQ(CutValue(path, VertexSet(3, {0, 1, 2})), 0);
  EXPECT_DOUBLE_EQ(CutValue(path, VertexSet(3, {0}), VertexSet(3, {2})), 0);
  EXPECT_DOUBLE_EQ(CutValue(path, VertexSet(3, {0}), VertexSet(3, {1})), 5);
  EXPECT_THROW(CutValue(path, VertexSet(3, {0, 1}), VertexSet(3, {1})),
               std::invalid_argument);
}

TEST(Cut, EqualsLaplacianQuadraticExhaustively) {
  NoiseSource src = NoiseSource::Seeded(11);
  for (Vertex n = 2; n <= 10; ++n) {
    const WeightedGraph g = RandomGraph(n, 0.5, src);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<double> x(n);
      for (Vertex v = 0; v < n; ++v) x[v] = (mask >> v) & 1;
      ASSERT_NEAR(CutValue(g, VertexSet::FromMask(n, mask)),
                  LaplacianQuadratic(g, x), 1e-9);
    }
  }
}

TEST(Cut, StIdentityExhaustivelyUpTo8) {
  NoiseSource src = NoiseSource::Seeded(12);
  for (Vertex n = 2; n <= 8; ++n) {
    const WeightedGraph g = RandomGraph(n, 0.6, src);
    // Each vertex goes to S, T or neither: 3^n assignments.
    std::uint64_t total = 1;
    for (Vertex i = 0; i < n; ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t s_mask = 0, t_mask = 0, c = code;
      for (Vertex v = 0; v < n; ++v, c /= 3) {
        if (c % 3 == 1) s_mask |= 1ull << v;
        if (c % 3 == 2) t_mask |= 1ull << v;
      }
      const VertexSet s = VertexSet::FromMask(n, s_mask);
      const VertexSet t = VertexSet::FromMask(n, t_mask);
      double brute = 0;
      for (const Edge& e : g.edges()) {
        if ((s.contains(e.u) && t.contains(e.v)) ||
            (s.contains(e.v) && t.contains(e.u))) {
          brute += e.weight;
        }
      }
      const double identity =
          (CutValue(g, s) + CutValue(g, t) - CutValue(g, s.Union(t))) / 2;
      ASSERT_NEAR(CutValue(g, s, t), brute, 1e-9);
      ASSERT_NEAR(identity, brute, 1e-9);
    }
  }
}

TEST(Laplacian, Examples) {
  auto k2 = WeightedGraph::FromTriples(2, {{0, 1, 1}});
  std::vector<double> x = {1, 0};
  EXPECT_DOUBLE_EQ(LaplacianQuadratic(k2, x), 1);
  NoiseSource src = NoiseSource::Seeded(3);
  auto g = RandomGraph(7, 0.5, src);
  std::vector<double> ones(7, 1.0);
  EXPECT_NEAR(LaplacianQuadratic(g, ones), 0, 1e-12);
  std::vector<double> wrong(6, 1.0);
  EXPECT_THROW(LaplacianQuadratic(g, wrong), std::invalid_argument);
}

TEST(Distances, Examples) {
  auto g = WeightedGraph::FromEntries(3, {{0, 1}, {1, 2}});
  auto h = WeightedGraph::FromEntries(3, {{1, 3}});
  EXPECT_DOUBLE_EQ(L1Distance(g, h), 2);
  EXPECT_DOUBLE_EQ(EvalLinearWorst(g, h), 1);
  EXPECT_DOUBLE_EQ(L1Distance(g, g), 0);
  EXPECT_DOUBLE_EQ(EvalLinearWorst(g, g), 0);
  auto a = WeightedGraph::FromEntries(3, {{0, 3}});
  auto b = WeightedGraph::FromEntries(3, {{1, 2}});
  EXPECT_DOUBLE_EQ(EvalLinearWorst(a, b), 3);
  EXPECT_THROW(L1Distance(g, WeightedGraph(4)), std::invalid_argument);
  EXPECT_THROW(EvalLinearWorst(g, WeightedGraph(4)), std::invalid_argument);
}

TEST(Distances, MatchDenseOracleAndEvalBounds) {
  NoiseSource src = NoiseSource::Seeded(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vertex n = 2 + static_cast<Vertex>(src.UniformIndex(12));
    const auto g = RandomGraph(n, 0.4, src);
    const auto h = RandomGraph(n, 0.4, src);
    const auto dg = Dense(g), dh = Dense(h);
    double l1 = 0, pos = 0, neg = 0;
    for (std::size_t i = 0; i < dg.size(); ++i) {
      const double d = dg[i] - dh[i];
      l1 += std::abs(d);
      (d > 0 ? pos : neg) += std::abs(d);
    }
    const double eval = EvalLinearWorst(g, h);
    ASSERT_NEAR(L1Distance(g, h), l1, 1e-9);
    ASSERT_NEAR(eval, std::max(pos, neg), 1e-9);
    ASSERT_LE(l1 / 2, eval + 1e-9);
    ASSERT_LE(eval, l1 + 1e-9);
  }
}

}  // namespace
}  // namespace dpgraph
