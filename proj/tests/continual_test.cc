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

#include "dpgraph/continual.h"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dpgraph/graph.h"

namespace dpgraph {
namespace {

std::vector<StreamUpdate> RandomStream(Vertex n, std::uint64_t rounds,
                                       NoiseSource& src, bool integer_weights) {
  std::vector<StreamUpdate> updates;
  for (std::uint64_t t = 0; t < rounds; ++t) {
    const EdgeIndex e = src.UniformIndex(NumSlots(n));
    const double w = integer_weights ? static_cast<double>(src.UniformIndex(5))
                                     : 3.0 * src.Uniform();
    updates.push_back({e, w});
  }
  return updates;
}

TEST(LevelIndex, Examples) {
  EXPECT_EQ(LevelIndex(6), 1);
  EXPECT_EQ(LevelIndex(4), 2);
  EXPECT_EQ(LevelIndex(7), 0);
  EXPECT_EQ(LevelIndex(1), 0);
  EXPECT_THROW(LevelIndex(0), std::invalid_argument);
}

TEST(ContinualBudget, Examples) {
  const auto b = ContinualBudgetFor(1.0, std::exp(-4.0), 55);  // ln 55 ~ 4.007
  EXPECT_NEAR(b.eps0, 1.0 / std::sqrt(std::log(55.0) * 4.0), 1e-12);
  // T = e^4 exactly is not an integer; check the formula at ln T = 4.
  EXPECT_NEAR(1.0 / std::sqrt(4.0 * 4.0), 0.25, 1e-15);
  EXPECT_EQ(ContinualBudgetFor(1.0, 0.01, 1).eps0, 1.0);
  EXPECT_EQ(ContinualBudgetFor(1.0, 0.01, 100).delta0, 0.01);
  EXPECT_THROW(ContinualBudgetFor(1.0, 0.01, 0), std::invalid_argument);
}

TEST(PartialSumTree, IdentityMechanismIsExact) {
  NoiseSource src = NoiseSource::Seeded(1);
  for (std::uint64_t rounds : {1u, 7u, 64u, 256u}) {
    const Vertex n = 9;
    const auto updates = RandomStream(n, rounds, src, true);
    PartialSumTree tree(n, rounds, IdentityMechanism());
    std::vector<WeightedGraph::Entry> prefix;
    for (const StreamUpdate& u : updates) {
      const WeightedGraph released = tree.Step(u, src);
      prefix.push_back({u.edge, u.weight});
      const WeightedGraph exact = WeightedGraph::FromEntries(n, prefix);
      ASSERT_EQ(released, exact) << "round " << tree.round();
      ASSERT_EQ(tree.RawPrefix(), exact);
    }
  }
}

TEST(PartialSumTree, RawPrefixExactWithRealWeights) {
  NoiseSource src = NoiseSource::Seeded(2);
  const Vertex n = 7;
  const std::uint64_t rounds = 200;
  const auto updates = RandomStream(n, rounds, src, false);
  PartialSumTree tree(n, rounds, FilterMechanism(PrivacyBudget(1.0, 0.1)));
  std::vector<double> prefix(NumSlots(n), 0.0);
  for (const StreamUpdate& u : updates) {
    tree.Step(u, src);
    prefix[u.edge] += u.weight;
    const WeightedGraph raw = tree.RawPrefix();
    for (EdgeIndex e = 0; e < prefix.size(); ++e) {
      ASSERT_NEAR(raw.weight(e), prefix[e], 1e-9);
    }
  }
}

TEST(PartialSumTree, TraceOfFirstUpdateInEightRounds) {
  PartialSumTree tree(3, 8, IdentityMechanism());
  NoiseSource src = NoiseSource::Seeded(3);
  std::vector<std::uint64_t> seen_at;
  std::uint32_t previous = 0;
  for (std::uint64_t t = 1; t <= 8; ++t) {
    tree.Step(t == 1 ? StreamUpdate{0, 1.0} : StreamUpdate{1, 0.0}, src);
    if (tree.inclusions()[0] != previous) seen_at.push_back(t);
    previous = tree.inclusions()[0];
  }
  EXPECT_EQ(seen_at, (std::vector<std::uint64_t>{1, 2, 4, 8}));
  EXPECT_EQ(tree.inclusions()[0], 4u);
  EXPECT_EQ(tree.privatize_calls(), 8u);
}

TEST(PartialSumTree, InclusionBoundAndTouchCost) {
  NoiseSource src = NoiseSource::Seeded(4);
  for (std::uint64_t rounds : {16u, 100u, 256u}) {
    const Vertex n = 30;
    PartialSumTree tree(n, rounds, IdentityMechanism());
    for (const auto& u : RandomStream(n, rounds, src, true)) tree.Step(u, src);
    const std::uint32_t bound = std::bit_width(rounds - 1) + 1;  // ceil(log2 T) + 1
    for (std::uint32_t c : tree.inclusions()) ASSERT_LE(c, bound);
    const double t = static_cast<double>(rounds);
    EXPECT_LE(static_cast<double>(tree.edge_touches()), 4.0 * t * std::log2(t));
  }
}

TEST(PartialSumTree, EmptyUpdatesGiveEmptyReleases) {
  PartialSumTree tree(5, 16, FilterMechanism(PrivacyBudget(1.0, 0.1)));
  NoiseSource src = NoiseSource::Seeded(5);
  for (int t = 0; t < 16; ++t) {
    EXPECT_TRUE(tree.Step({static_cast<EdgeIndex>(t % 10), 0.0}, src).empty());
  }
  EXPECT_EQ(src.counters().laplace, 0u);
}

TEST(PartialSumTree, RejectsOverflowAndBadUpdates) {
  PartialSumTree tree(4, 2, IdentityMechanism());
  NoiseSource src = NoiseSource::Seeded(6);
  EXPECT_THROW(tree.Step({6, 1.0}, src), std::invalid_argument);
  EXPECT_THROW(tree.Step({0, -1.0}, src), std::invalid_argument);
  tree.Step({0, 1.0}, src);
  tree.Step({1, 1.0}, src);
  EXPECT_THROW(tree.Step({2, 1.0}, src), StreamExhaustedError);
  EXPECT_THROW(PartialSumTree(4, 0, IdentityMechanism()), std::invalid_argument);
}

TEST(PartialSumTree, WalkMechanismRuns) {
  NoiseSource src = NoiseSource::Seeded(7);
  PartialSumTree tree(10, 32, WalkMechanism(PrivacyBudget(1.0, 0.01)));
  for (const auto& u : RandomStream(10, 32, src, false)) {
    const WeightedGraph out = tree.Step(u, src);
    for (const Edge& e : out.edges()) ASSERT_GT(e.weight, 0);
  }
  EXPECT_EQ(tree.round(), 32u);
}

TEST(PartialSumTree, ErrorIsSubadditiveOverLevels) {
  // Eval of the running release is at most the sum of the per-level errors,
  // so at most (levels) times the worst single-level error.
  NoiseSource src = NoiseSource::Seeded(8);
  const Vertex n = 12;
  const std::uint64_t rounds = 64;
  const auto updates = RandomStream(n, rounds, src, false);
  std::vector<double> level_errors;
  StaticMechanism recorded = [&](const WeightedGraph& g, NoiseSource& s) {
    WeightedGraph out = FilterMechanism(PrivacyBudget(1.0, 0.1))(g, s);
    level_errors.push_back(EvalLinearWorst(g, out));
    return out;
  };
  PartialSumTree tree(n, rounds, recorded);
  double worst_release = 0;
  for (const auto& u : updates) {
    const WeightedGraph out = tree.Step(u, src);
    worst_release = std::max(worst_release, EvalLinearWorst(tree.RawPrefix(), out));
  }
  const double worst_level = *std::max_element(level_errors.begin(), level_errors.end());
  EXPECT_LE(worst_release, (std::bit_width(rounds - 1) + 1) * worst_level + 1e-9);
}

}  // namespace
}  // namespace dpgraph
