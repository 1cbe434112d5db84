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

#include "dpgraph/mechanisms.h"

#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "dpgraph/evaluation.h"
#include "test_util.h"

namespace dpgraph {
namespace {

using testing::RandomGraph;

TEST(Filter, ThresholdExample) {
  EXPECT_NEAR(FilterThreshold(4, PrivacyBudget(1.0, 0.1)), 2 * std::log(80.0), 1e-12);
  EXPECT_NEAR(FilterThreshold(4, PrivacyBudget(1.0, 0.1)), 8.7641, 1e-4);
}

TEST(Filter, ScriptedZeroNoise) {
  auto g = WeightedGraph::FromTriples(4, {{0, 1, 100}, {2, 3, 1}});
  NoiseSource src = NoiseSource::Scripted({0.0, 0.0});
  const WeightedGraph out = FilterRelease(g, PrivacyBudget(1.0, 0.1), src);
  ASSERT_EQ(out.edge_count(), 1u);
  EXPECT_EQ(out.weight(0, 1), 100.0);
  EXPECT_EQ(out.weight(2, 3), 0.0);
  EXPECT_EQ(src.script_remaining(), 0u);
}

TEST(Filter, ScriptedDrawOrderIsAscendingIndex) {
  auto g = WeightedGraph::FromTriples(4, {{2, 3, 50}, {0, 1, 50}});
  NoiseSource src = NoiseSource::Scripted({1.0, 2.0});
  const WeightedGraph out = FilterRelease(g, PrivacyBudget(1.0, 0.1), src);
  EXPECT_EQ(out.weight(0, 1), 51.0);
  EXPECT_EQ(out.weight(2, 3), 52.0);
}

TEST(Filter, EmptyGraphDrawsNothing) {
  NoiseSource src = NoiseSource::Seeded(1);
  const WeightedGraph out = FilterRelease(WeightedGraph(10), PrivacyBudget(1.0, 0.1), src);
  EXPECT_TRUE(out.empty());
  EXPECT_EQ(src.counters().laplace, 0u);
}

TEST(Filter, ExactlyOneDrawPerEdgeAndSupportSubset) {
  NoiseSource gsrc = NoiseSource::Seeded(2);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = RandomGraph(20, 0.3, gsrc, 1.0, 40.0);
    NoiseSource src = NoiseSource::Seeded(100 + trial);
    const PrivacyBudget budget(1.0, 0.05);
    const auto out = FilterRelease(g, budget, src);
    EXPECT_EQ(src.counters().laplace, g.edge_count());
    const double t = FilterThreshold(20, budget);
    for (const Edge& e : out.edges()) {
      EXPECT_GT(g.weight(e.index), 0.0);
      EXPECT_GT(e.weight, t);
    }
  }
}

TEST(Filter, UnitWeightEdgeRarelySurvives) {
  // Threshold tail at weight 1: P(1 + Z > t) = exp(-(t - 1) eps) / 2.
  const Vertex n = 4;
  const PrivacyBudget budget(1.0, 0.1);
  auto g = WeightedGraph::FromTriples(n, {{0, 1, 1}});
  NoiseSource src = NoiseSource::Seeded(3);
  int survived = 0;
  const int trials = 200'000;
  for (int i = 0; i < trials; ++i) survived += !FilterRelease(g, budget, src).empty();
  const double bound = budget.delta() / (static_cast<double>(n) * n);
  EXPECT_LE(static_cast<double>(survived) / trials, bound);
}

TEST(Exchange, EmptyPublicGraph) {
  MechanismConfig config{PrivacyBudget(1.0, 0.1)};
  NoiseSource src = NoiseSource::Seeded(1);
  const auto res = ExchangeRelease(WeightedGraph(6), config, EdgeCountMode::kPublic, src);
  EXPECT_EQ(res.k, 0u);
  EXPECT_EQ(res.walk_steps, 0u);
  EXPECT_TRUE(res.graph.empty());
  EXPECT_EQ(src.counters().laplace, 0u);
}

TEST(Exchange, ConfidentialCountExample) {
  EXPECT_EQ(ConfidentialEdgeCount(3, 10, 0.0, 1.0, std::exp(-2.0)), 5u);
  EXPECT_EQ(ConfidentialEdgeCount(3, 4, 0.0, 1.0, std::exp(-2.0)), 4u);
  EXPECT_EQ(ConfidentialEdgeCount(3, 10, -20.0, 1.0, 0.5), 0u);
  EXPECT_EQ(ConfidentialEdgeCount(3, 10, 0.5, 1.0, std::exp(-2.0)), 5u);
}

TEST(Exchange, ConfidentialScriptedEndToEnd) {
  auto g = WeightedGraph::FromTriples(5, {{0, 1, 3}, {1, 2, 3}, {3, 4, 3}});
  MechanismConfig config{PrivacyBudget(1.0, 0.1)};
  config.beta = std::exp(-2.0);
  // First scripted value is the count noise, then one per released slot.
  NoiseSource src = NoiseSource::Scripted({0.0, 0, 0, 0, 0, 0}, 7);
  const auto res = ExchangeRelease(g, config, EdgeCountMode::kConfidential, src);
  EXPECT_EQ(res.k, 5u);
  EXPECT_EQ(res.topology.size(), 5u);
  EXPECT_EQ(src.counters().laplace, 6u);
}

TEST(Exchange, DrawCountsAndSizes) {
  NoiseSource gsrc = NoiseSource::Seeded(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = RandomGraph(15, 0.2, gsrc);
    MechanismConfig config{PrivacyBudget(1.0, 0.01)};
    NoiseSource src = NoiseSource::Seeded(trial);
    const auto res = ExchangeRelease(g, config, EdgeCountMode::kPublic, src);
    EXPECT_EQ(res.k, g.edge_count());
    EXPECT_EQ(res.topology.size(), res.k);
    EXPECT_EQ(res.walk_steps,
              MixingSteps(res.k, g.num_slots(), 1.0, 0.01));
    EXPECT_EQ(src.counters().laplace, res.k);
    EXPECT_LE(res.graph.edge_count(), res.k);
    for (const Edge& e : res.graph.edges()) EXPECT_GT(e.weight, 0);

    NoiseSource csrc = NoiseSource::Seeded(1000 + trial);
    const auto conf = ExchangeRelease(g, config, EdgeCountMode::kConfidential, csrc);
    EXPECT_EQ(csrc.counters().laplace, conf.k + 1);
  }
}

TEST(Exchange, HighEpsRecoversTopology) {
  // Weights 1..m, so every edge beats every non-edge by at least 1.
  NoiseSource gsrc = NoiseSource::Seeded(5);
  const auto base = RandomGraph(12, 0.25, gsrc);
  std::vector<WeightedGraph::Entry> entries;
  double w = 1;
  for (const Edge& e : base.edges()) entries.push_back({e.index, w++});
  const auto g = WeightedGraph::FromEntries(12, entries);
  Topology support;
  for (const Edge& e : g.edges()) support.push_back(e.index);
  MechanismConfig config{PrivacyBudget(50.0, 0.01)};
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    NoiseSource src = NoiseSource::Seeded(trial);
    hits += ExchangeRelease(g, config, EdgeCountMode::kPublic, src).topology == support;
  }
  EXPECT_GE(hits, 99);
}

TEST(Exchange, InitialTopologyRules) {
  auto g = WeightedGraph::FromTriples(4, {{0, 2, 1}, {1, 3, 5}, {2, 3, 5}});
  // k >= |E|: all of E, then the lowest free indices.
  EXPECT_EQ(InitialTopology(g, 5), (Topology{0, 1, 2, 4, 5}));
  // k < |E|: heaviest, ties to the lower index.
  EXPECT_EQ(InitialTopology(g, 1), (Topology{4}));
  EXPECT_EQ(InitialTopology(g, 2), (Topology{4, 5}));
}

TEST(Exchange, SmallInstanceLawMatchesExactPi) {
  auto g = WeightedGraph::FromTriples(4, {{0, 1, 2}, {1, 2, 1}, {2, 3, 0.5}});
  MechanismConfig config{PrivacyBudget(1.0, 0.2)};
  const auto dist = SparseExpDistribution::FromGraph(g, 3, 1.0);
  const auto law = EmpiricalTopologyLaw(
      6, 3,
      [&](NoiseSource& src) {
        return ExchangeRelease(g, config, EdgeCountMode::kPublic, src).topology;
      },
      100'000, 11);
  const double bound = 0.2 / (std::exp(2.0) + 1) + 0.01;
  EXPECT_LE(TvDistance(law.frequencies, ExactPi(dist)), bound);
}

TEST(KnownTopology, ScriptedZeroIsIdentity) {
  NoiseSource gsrc = NoiseSource::Seeded(6);
  const auto g = RandomGraph(8, 0.5, gsrc);
  NoiseSource src = NoiseSource::Scripted(std::vector<double>(g.edge_count(), 0.0));
  const auto res = TopologyKnownRelease(g, 1.0, src);
  EXPECT_EQ(res.graph, g);
  EXPECT_TRUE(res.zeroed.empty());
  NoiseSource empty_src = NoiseSource::Seeded(1);
  EXPECT_TRUE(TopologyKnownRelease(WeightedGraph(5), 1.0, empty_src).graph.empty());
}

TEST(KnownTopology, NegativeResultsAreRecordedAsZeros) {
  auto g = WeightedGraph::FromTriples(3, {{0, 1, 1}, {1, 2, 1}});
  NoiseSource src = NoiseSource::Scripted({-2.0, 0.5});
  const auto res = TopologyKnownRelease(g, 1.0, src);
  EXPECT_EQ(res.zeroed, (std::vector<EdgeIndex>{0}));
  EXPECT_EQ(res.graph.edge_count(), 1u);
  EXPECT_EQ(res.graph.weight(1, 2), 1.5);
}

TEST(KnownTopology, MeanAbsoluteErrorIsOneOverEps) {
  WeightedGraph path = WeightedGraph::FromTriples(
      10, {{0, 1, 100}, {1, 2, 100}, {2, 3, 100}, {3, 4, 100}, {4, 5, 100},
           {5, 6, 100}, {6, 7, 100}, {7, 8, 100}, {8, 9, 100}});
  const double eps = 0.5;
  NoiseSource src = NoiseSource::Seeded(7);
  double sum = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    sum += L1Distance(path, TopologyKnownRelease(path, eps, src).graph);
  }
  EXPECT_NEAR(sum / (trials * 9.0), 1 / eps, 0.05 / eps);
}

TEST(Gauss, SigmaAndScriptedIdentity) {
  EXPECT_NEAR(GaussianSigma(PrivacyBudget(1.0, 1e-5)),
              std::sqrt(2 * std::log(1.25e5)), 1e-12);
  auto g = WeightedGraph::FromTriples(4, {{0, 1, 2}, {2, 3, 1}});
  NoiseSource src = NoiseSource::Scripted(std::vector<double>(6, 0.0));
  const auto res = AnalyzeGaussRelease(g, PrivacyBudget(1.0, 0.1), src);
  EXPECT_EQ(res.dense, (std::vector<double>{2, 0, 0, 0, 0, 1}));
  EXPECT_EQ(res.positive_view, g);
}

TEST(Gauss, PerCoordinateStd) {
  auto g = WeightedGraph::FromTriples(30, {{0, 1, 5}});
  const PrivacyBudget budget(1.0, 1e-3);
  NoiseSource src = NoiseSource::Seeded(8);
  double sum_sq = 0;
  std::uint64_t count = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto res = AnalyzeGaussRelease(g, budget, src);
    for (std::size_t i = 0; i < res.dense.size(); ++i) {
      const double d = res.dense[i] - g.weight(i);
      sum_sq += d * d;
      ++count;
    }
    for (const Edge& e : res.positive_view.edges()) EXPECT_GT(e.weight, 0);
  }
  EXPECT_NEAR(std::sqrt(sum_sq / count), GaussianSigma(budget),
              0.05 * GaussianSigma(budget));
}

TEST(Jl, DimensionFormula) {
  EXPECT_EQ(JlDimension(0.1, 0.1), static_cast<std::uint64_t>(std::ceil(800 * std::log(20.0))));
}

TEST(Jl, EmptyGraphGivesZeroMatrix) {
  MechanismConfig config{PrivacyBudget(1.0, 0.1)};
  config.jl_dimension = 50;
  NoiseSource src = NoiseSource::Seeded(1);
  const auto sketch = JlRelease(WeightedGraph(5), config, src);
  EXPECT_EQ(sketch.matrix.norm(), 0.0);
}

TEST(Jl, ExpectationIsLaplacian) {
  auto g = WeightedGraph::FromTriples(4, {{0, 1, 2}, {1, 2, 1}, {0, 3, 3}});
  MechanismConfig config{PrivacyBudget(1.0, 0.1)};
  config.jl_dimension = 10'000;
  Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(4, 4);
  const int reps = 20;
  for (int i = 0; i < reps; ++i) {
    NoiseSource src = NoiseSource::Seeded(i);
    const auto sketch = JlRelease(g, config, src);
    EXPECT_LT((sketch.matrix - sketch.matrix.transpose()).cwiseAbs().maxCoeff(), 1e-9);
    mean += sketch.matrix / reps;
  }
  const Eigen::MatrixXd lap = DenseLaplacian(g);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (lap(r, c) != 0) EXPECT_NEAR(mean(r, c), lap(r, c), 0.02 * std::abs(lap(r, c)));
      else EXPECT_NEAR(mean(r, c), 0.0, 0.02);
    }
  }
}

TEST(MechanismConfig, Validation) {
  MechanismConfig config{PrivacyBudget(1.0, 0.1)};
  EXPECT_NO_THROW(config.Validate());
  config.mixing_multiplier = 0;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
  config.mixing_multiplier = 1;
  config.beta = 1.5;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
  config.beta.reset();
  config.jl_eta = 1.0;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
  config.jl_eta = 0.1;
  config.jl_dimension = 0;
  EXPECT_THROW(config.Validate(), std::invalid_argument);
}

TEST(Determinism, SameSeedSameOutput) {
  NoiseSource gsrc = NoiseSource::Seeded(9);
  const auto g = RandomGraph(20, 0.2, gsrc, 1, 30);
  MechanismConfig config{PrivacyBudget(1.0, 0.01)};
  for (int rep = 0; rep < 2; ++rep) {
    NoiseSource a = NoiseSource::Seeded(5), b = NoiseSource::Seeded(5);
    EXPECT_EQ(ExchangeRelease(g, config, EdgeCountMode::kConfidential, a).graph,
              ExchangeRelease(g, config, EdgeCountMode::kConfidential, b).graph);
    EXPECT_EQ(FilterRelease(g, config.budget, a), FilterRelease(g, config.budget, b));
  }
}

}  // namespace
}  // namespace dpgraph
