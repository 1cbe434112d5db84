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

// Edge-level private graph release mechanisms.
//
// Noise draw order is part of the contract so scripted sources give
// reproducible results: every per-edge draw iterates edges in ascending edge
// index. The confidential-count walk draws its count noise first.

#ifndef DPGRAPH_MECHANISMS_H_
#define DPGRAPH_MECHANISMS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dpgraph/graph.h"
#include "dpgraph/random.h"
#include "dpgraph/sampler.h"

namespace dpgraph {

struct MechanismConfig {
  explicit MechanismConfig(PrivacyBudget b) : budget(b) {}

  PrivacyBudget budget;
  // Failure probability for the noisy edge count; defaults to delta.
  std::optional<double> beta;
  double mixing_multiplier = 1.0;
  // JL projection dimension r; derived from jl_eta and delta when unset.
  std::optional<std::uint64_t> jl_dimension;
  double jl_eta = 0.1;

  double effective_beta() const { return beta.value_or(budget.delta()); }
  // Throws std::invalid_argument if a field is outside its domain.
  void Validate() const;
};

// 2 ln(2n / delta) / eps.
double FilterThreshold(Vertex n, const PrivacyBudget& budget);

// Adds Lap(1/eps) to each edge of G (and only those) and zeroes every noisy
// weight <= FilterThreshold. Exactly |E| Laplace draws.
WeightedGraph FilterRelease(const WeightedGraph& g, const PrivacyBudget& budget,
                            NoiseSource& src);

enum class EdgeCountMode { kPublic, kConfidential };

struct ExchangeReleaseResult {
  WeightedGraph graph;
  Topology topology;          // the sampled k-subset
  std::uint64_t k = 0;
  std::uint64_t walk_steps = 0;  // counted by the walk itself
};

// Starting set for the walk: all of E plus the lowest-index non-edges when
// k >= |E|, otherwise the k heaviest edges (ties to the lower index).
Topology InitialTopology(const WeightedGraph& g, std::uint64_t k);

// Noisy edge count clamp(floor(|E| + noise + ln(1/beta)/eps), 0, N), given
// the already drawn Laplace noise.
std::uint64_t ConfidentialEdgeCount(std::size_t edge_count,
                                    std::uint64_t slots, double noise,
                                    double eps, double beta);

// Samples a k-subset of pairs by the exchange walk targeting
// pi[S] ~ prod exp(eps * w_e), then releases max(0, w_e + Lap(1/eps)) on it.
// Public mode uses k = |E|; confidential mode draws k first.
ExchangeReleaseResult ExchangeRelease(const WeightedGraph& g,
                                      const MechanismConfig& config,
                                      EdgeCountMode mode, NoiseSource& src);

struct KnownTopologyRelease {
  WeightedGraph graph;
  // Edges whose noisy weight came out <= 0; they are released as explicit
  // zeros and therefore absent from graph.
  std::vector<EdgeIndex> zeroed;
};

// Laplace mechanism on the weights of a public edge set.
KnownTopologyRelease TopologyKnownRelease(const WeightedGraph& g, double eps,
                                          NoiseSource& src);

// sqrt(2 ln(1.25/delta)) / eps.
double GaussianSigma(const PrivacyBudget& budget);

struct GaussRelease {
  Vertex n = 1;
  double sigma = 0;
  // Signed noisy weight for every one of the C(n,2) pairs, by edge index.
  std::vector<double> dense;
  // Strictly positive entries of dense.
  WeightedGraph positive_view;
};

// Analyze Gauss baseline: N(0, sigma^2) on every pair. O(n^2) by design.
GaussRelease AnalyzeGaussRelease(const WeightedGraph& g,
                                 const PrivacyBudget& budget, NoiseSource& src);

struct LaplacianSketch {
  Vertex n = 1;
  std::uint64_t r = 0;
  Eigen::MatrixXd matrix;  // n x n, symmetric
};

// ceil(8 ln(2/delta) / eta^2).
std::uint64_t JlDimension(double delta, double eta);

// (1/r) E_G^T M^T M E_G for an r x C(n,2) standard Gaussian M. Only the
// columns of M that meet an edge are drawn (r draws per edge, ascending edge
// index), and M E_G is accumulated directly so memory is O(r n).
LaplacianSketch JlRelease(const WeightedGraph& g, const MechanismConfig& config,
                          NoiseSource& src);

}  // namespace dpgraph

#endif  // DPGRAPH_MECHANISMS_H_
