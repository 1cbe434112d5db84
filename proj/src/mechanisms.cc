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

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpgraph {

void MechanismConfig::Validate() const {
  const double b = effective_beta();
  if (!(b > 0 && b < 1)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!(mixing_multiplier > 0) || !std::isfinite(mixing_multiplier)) {
    throw std::invalid_argument("mixing multiplier must be positive");
  }
  if (jl_dimension && *jl_dimension == 0) {
    throw std::invalid_argument("JL dimension must be positive");
  }
  if (!(jl_eta > 0 && jl_eta < 1)) {
    throw std::invalid_argument("JL eta must lie in (0, 1)");
  }
}

double FilterThreshold(Vertex n, const PrivacyBudget& budget) {
  return 2.0 * std::log(2.0 * static_cast<double>(n) / budget.delta()) /
         budget.eps();
}

WeightedGraph FilterRelease(const WeightedGraph& g, const PrivacyBudget& budget,
                            NoiseSource& src) {
  const double threshold = FilterThreshold(g.n(), budget);
  const double scale = 1.0 / budget.eps();
  std::vector<WeightedGraph::Entry> kept;
  for (const Edge& e : g.edges()) {
    const double noisy = e.weight + src.Laplace(scale);
    if (noisy > threshold) kept.push_back({e.index, noisy});
  }
  return WeightedGraph::FromEntries(g.n(), std::move(kept));
}

Topology InitialTopology(const WeightedGraph& g, std::uint64_t k) {
  const auto edges = g.edges();
  Topology s;
  s.reserve(k);
  if (k >= edges.size()) {
    for (const Edge& e : edges) s.push_back(e.index);
    // Fill with the lowest-index pairs outside E.
    std::size_t next_edge = 0;
    for (EdgeIndex candidate = 0; s.size() < k; ++candidate) {
      while (next_edge < edges.size() && edges[next_edge].index < candidate) {
        ++next_edge;
      }
      if (next_edge < edges.size() && edges[next_edge].index == candidate) {
        continue;
      }
      s.push_back(candidate);
    }
  } else {
    std::vector<std::size_t> order(edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::partial_sort(order.begin(), order.begin() + static_cast<long>(k),
                      order.end(), [&](std::size_t a, std::size_t b) {
                        if (edges[a].weight != edges[b].weight) {
                          return edges[a].weight > edges[b].weight;
                        }
                        return edges[a].index < edges[b].index;
                      });
    for (std::size_t i = 0; i < k; ++i) s.push_back(edges[order[i]].index);
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::uint64_t ConfidentialEdgeCount(std::size_t edge_count,
                                    std::uint64_t slots, double noise,
                                    double eps, double beta) {
  const double raw = std::floor(static_cast<double>(edge_count) + noise +
                                std::log(1.0 / beta) / eps);
  if (!(raw > 0)) return 0;
  if (raw >= static_cast<double>(slots)) return slots;
  return static_cast<std::uint64_t>(raw);
}

ExchangeReleaseResult ExchangeRelease(const WeightedGraph& g,
                                      const MechanismConfig& config,
                                      EdgeCountMode mode, NoiseSource& src) {
  config.Validate();
  const PrivacyBudget& budget = config.budget;
  const double scale = 1.0 / budget.eps();
  const std::uint64_t slots = g.num_slots();

  ExchangeReleaseResult result{WeightedGraph(g.n()), {}, g.edge_count(), 0};
  if (mode == EdgeCountMode::kConfidential) {
    result.k = ConfidentialEdgeCount(g.edge_count(), slots, src.Laplace(scale),
                                     budget.eps(), config.effective_beta());
  }
  if (result.k == 0) return result;

  const auto dist = SparseExpDistribution::FromGraph(g, result.k, budget.eps());
  const Topology start = InitialTopology(g, result.k);
  ExchangeWalk walk(dist, start);
  walk.Run(MixingSteps(result.k, slots, budget.eps(), budget.delta(),
                       config.mixing_multiplier),
           src);
  result.walk_steps = walk.steps_taken();
  result.topology = walk.topology();
  if (result.topology.size() != result.k) {
    throw std::logic_error("exchange walk changed the subset size");
  }

  // Ascending index: the released topology is sorted, so one merge pass
  // against E recovers w_e (0 off E).
  std::vector<WeightedGraph::Entry> released;
  released.reserve(result.topology.size());
  const auto edges = g.edges();
  std::size_t j = 0;
  for (EdgeIndex e : result.topology) {
    while (j < edges.size() && edges[j].index < e) ++j;
    const double w = j < edges.size() && edges[j].index == e ? edges[j].weight
                                                             : 0.0;
    const double noisy = std::max(0.0, w + src.Laplace(scale));
    if (noisy > 0) released.push_back({e, noisy});
  }
  result.graph = WeightedGraph::FromEntries(g.n(), std::move(released));
  return result;
}

KnownTopologyRelease TopologyKnownRelease(const WeightedGraph& g, double eps,
                                          NoiseSource& src) {
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be positive and finite");
  }
  KnownTopologyRelease out{WeightedGraph(g.n()), {}};
  std::vector<WeightedGraph::Entry> released;
  released.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const double noisy = e.weight + src.Laplace(1.0 / eps);
    if (noisy > 0) {
      released.push_back({e.index, noisy});
    } else {
      out.zeroed.push_back(e.index);
    }
  }
  out.graph = WeightedGraph::FromEntries(g.n(), std::move(released));
  return out;
}

double GaussianSigma(const PrivacyBudget& budget) {
  return std::sqrt(2.0 * std::log(1.25 / budget.delta())) / budget.eps();
}

GaussRelease AnalyzeGaussRelease(const WeightedGraph& g,
                                 const PrivacyBudget& budget,
                                 NoiseSource& src) {
  GaussRelease out;
  out.n = g.n();
  out.sigma = GaussianSigma(budget);
  const std::uint64_t slots = g.num_slots();
  out.dense.assign(slots, 0.0);
  for (const Edge& e : g.edges()) out.dense[e.index] = e.weight;
  std::vector<WeightedGraph::Entry> positive;
  for (std::uint64_t e = 0; e < slots; ++e) {
    out.dense[e] += src.Gaussian(out.sigma);
    if (out.dense[e] > 0) positive.push_back({e, out.dense[e]});
  }
  out.positive_view = WeightedGraph::FromEntries(g.n(), std::move(positive));
  return out;
}

std::uint64_t JlDimension(double delta, double eta) {
  if (!(delta > 0 && delta < 1)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(eta > 0 && eta < 1)) throw std::invalid_argument("eta must lie in (0, 1)");
  return static_cast<std::uint64_t>(
      std::ceil(8.0 * std::log(2.0 / delta) / (eta * eta)));
}

LaplacianSketch JlRelease(const WeightedGraph& g, const MechanismConfig& config,
                          NoiseSource& src) {
  config.Validate();
  LaplacianSketch out;
  out.n = g.n();
  out.r = config.jl_dimension.value_or(
      JlDimension(config.budget.delta(), config.jl_eta));
  const auto r = static_cast<Eigen::Index>(out.r);
  // projected = M E_G, r x n. Row e of E_G is sqrt(w_e) (chi_u - chi_v).
  Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(r, g.n());
  for (const Edge& e : g.edges()) {
    const double scale = std::sqrt(e.weight);
    for (Eigen::Index i = 0; i < r; ++i) {
      const double m = scale * src.Gaussian(1.0);
      projected(i, e.u) += m;
      projected(i, e.v) -= m;
    }
  }
  out.matrix = Eigen::MatrixXd::Zero(g.n(), g.n());
  out.matrix.selfadjointView<Eigen::Lower>().rankUpdate(
      projected.transpose(), 1.0 / static_cast<double>(out.r));
  out.matrix = out.matrix.selfadjointView<Eigen::Lower>();
  return out;
}

}  // namespace dpgraph
