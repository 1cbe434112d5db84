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

#ifndef DPGRAPH_EVALUATION_H_
#define DPGRAPH_EVALUATION_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dpgraph/graph.h"
#include "dpgraph/sampler.h"

namespace dpgraph {

inline constexpr Vertex kMaxBruteForceVertices = 24;

struct CutErrorResult {
  double value = 0;
  VertexSet witness{1};
};

// max_S |Phi_G(S) - Phi_H(S)| over every S (V \ S gives the same cut, so
// only sets avoiding vertex n-1 are visited), walking the subsets in Gray
// code order with O(degree) updates per flip. Throws std::length_error for
// n > kMaxBruteForceVertices.
CutErrorResult MaxCutError(const WeightedGraph& g, const WeightedGraph& h);

// max_v |Phi_G({v}) - Phi_H({v})|.
double MaxSingletonCutError(const WeightedGraph& g, const WeightedGraph& h);

struct SpectralNormResult {
  double value = 0;
  int iterations = 0;
  bool converged = false;
};

// Largest |eigenvalue| of L_G - L_H by power iteration with sparse products.
// The estimate ||A x_k|| increases monotonically to the answer even when
// +lambda and -lambda tie; iteration stops once the geometric extrapolation
// of the remaining gain falls below rel_tol, or at max_iterations with
// converged = false.
SpectralNormResult SpectralNormDiff(const WeightedGraph& g,
                                    const WeightedGraph& h,
                                    std::uint64_t seed = 0,
                                    double rel_tol = 1e-9,
                                    int max_iterations = 10'000);

Eigen::MatrixXd DenseLaplacian(const WeightedGraph& g);
// Laplacian of a signed weight vector over all C(n,2) pairs.
Eigen::MatrixXd DenseLaplacian(Vertex n, std::span<const double> pair_weights);

// Largest |eigenvalue| of a dense symmetric matrix.
double SymmetricSpectralNorm(const Eigen::MatrixXd& m);

// Half the l1 distance. Throws std::invalid_argument for length mismatch or
// when either table does not sum to 1 within 1e-9.
double TvDistance(std::span<const double> p, std::span<const double> q);

struct EmpiricalLaw {
  std::vector<double> frequencies;  // by SubsetIndexer rank
  std::uint64_t trials = 0;
  // 0.5 * sqrt(K / trials): Cauchy-Schwarz bound on the expected TV between
  // an empirical table over K cells and its source.
  double slack = 0;
};

// 0.5 * sum_i sqrt(p_i (1 - p_i) / trials), the reference-aware version of
// EmpiricalLaw::slack.
double MultinomialTvSlack(std::span<const double> reference,
                          std::uint64_t trials);

inline constexpr std::uint64_t kMinEmpiricalTrials = 10'000;
inline constexpr std::uint64_t kMaxEmpiricalStates = 10'000;

// Runs sample(src) for trials independent sources NoiseSource::Seeded(seed,
// trial) and tabulates the returned k-subsets of [N].
EmpiricalLaw EmpiricalTopologyLaw(
    std::uint64_t ground_size, std::uint64_t k,
    const std::function<Topology(NoiseSource&)>& sample, std::uint64_t trials,
    std::uint64_t seed);

inline constexpr std::uint64_t kMaxTransitionMatrixStates = 2'000;

// Row-stochastic matrix of the exchange walk over all k-subsets, by rank.
// Throws std::length_error above kMaxTransitionMatrixStates.
Eigen::MatrixXd ExactTransitionMatrix(const SparseExpDistribution& dist);

// Stationary law of a row-stochastic matrix from the linear system
// p (P - I) = 0, sum p = 1.
std::vector<double> StationaryDistribution(const Eigen::MatrixXd& transition);

// max |pi(S) P(S,S') - pi(S') P(S',S)| over all pairs.
double DetailedBalanceViolation(const Eigen::MatrixXd& transition,
                                std::span<const double> pi);

}  // namespace dpgraph

#endif  // DPGRAPH_EVALUATION_H_
