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

#include "dpgraph/evaluation.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "dpgraph/random.h"

namespace dpgraph {
namespace {

struct SignedEdge {
  Vertex u;
  Vertex v;
  double d;
};

std::vector<SignedEdge> Difference(const WeightedGraph& g,
                                   const WeightedGraph& h) {
  if (g.n() != h.n()) {
    throw std::invalid_argument("graphs have different vertex counts");
  }
  std::vector<SignedEdge> diff;
  ForEachUnion(g, h, [&](const Edge& e, double a, double b) {
    if (a != b) diff.push_back({e.u, e.v, a - b});
  });
  return diff;
}

}  // namespace

CutErrorResult MaxCutError(const WeightedGraph& g, const WeightedGraph& h) {
  const Vertex n = g.n();
  if (n > kMaxBruteForceVertices) {
    throw std::length_error("cut enumeration limited to n <= " +
                            std::to_string(kMaxBruteForceVertices) +
                            ", got n=" + std::to_string(n));
  }
  struct Neighbor {
    Vertex other;
    double d;
  };
  std::vector<std::vector<Neighbor>> adjacency(static_cast<std::size_t>(n));
  for (const SignedEdge& e : Difference(g, h)) {
    adjacency[e.u].push_back({e.v, e.d});
    adjacency[e.v].push_back({e.u, e.d});
  }

  std::uint64_t mask = 0;  // current S
  std::uint64_t best_mask = 0;
  double cut = 0, best = 0;
  const std::uint64_t count = n >= 1 ? std::uint64_t{1} << (n - 1) : 1;
  for (std::uint64_t i = 1; i < count; ++i) {
    const int v = std::countr_zero(i);
    const bool entering = !(mask >> v & 1);
    for (const Neighbor& nb : adjacency[v]) {
      const bool other_in = mask >> nb.other & 1;
      // Entering S: edges to outside start crossing, edges inside stop.
      cut += (entering != other_in) ? nb.d : -nb.d;
    }
    mask ^= std::uint64_t{1} << v;
    if (std::abs(cut) > best) {
      best = std::abs(cut);
      best_mask = mask;
    }
  }
  return {best, VertexSet::FromMask(n, best_mask)};
}

double MaxSingletonCutError(const WeightedGraph& g, const WeightedGraph& h) {
  std::vector<double> degree_diff(static_cast<std::size_t>(g.n()), 0.0);
  for (const SignedEdge& e : Difference(g, h)) {
    degree_diff[e.u] += e.d;
    degree_diff[e.v] += e.d;
  }
  double best = 0;
  for (double d : degree_diff) best = std::max(best, std::abs(d));
  return best;
}

SpectralNormResult SpectralNormDiff(const WeightedGraph& g,
                                    const WeightedGraph& h, std::uint64_t seed,
                                    double rel_tol, int max_iterations) {
  const auto diff = Difference(g, h);
  SpectralNormResult result;
  if (diff.empty()) {
    result.converged = true;
    return result;
  }
  const auto n = static_cast<std::size_t>(g.n());
  auto multiply = [&](const std::vector<double>& x, std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (const SignedEdge& e : diff) {
      const double flow = e.d * (x[e.u] - x[e.v]);
      y[e.u] += flow;
      y[e.v] -= flow;
    }
  };
  auto normalize = [](std::vector<double>& x) {
    double norm = 0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
    return norm;
  };

  NoiseSource src = NoiseSource::Seeded(seed, 0x5eed);
  std::vector<double> x(n), y(n);
  for (double& v : x) v = src.Gaussian(1.0);
  normalize(x);

  double estimate = 0, last_gain = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    multiply(x, y);
    x.swap(y);
    const double next = normalize(x);
    result.iterations = it;
    if (next == 0) {
      // x was orthogonal to every non-null direction; only possible when
      // the start vector is exactly degenerate.
      result.value = estimate;
      result.converged = true;
      return result;
    }
    const double gain = next - estimate;
    estimate = next;
    if (it >= 2 && gain <= 8 * std::numeric_limits<double>::epsilon() * estimate) {
      // Rounding-level plateau of a non-decreasing sequence.
      result.value = estimate;
      result.converged = true;
      return result;
    }
    if (it > 2 && last_gain > 0) {
      // Remaining gain of a geometric tail with ratio gain / last_gain.
      const double ratio = std::min(gain / last_gain, 1.0 - 1e-12);
      const double remaining = gain * ratio / (1.0 - ratio);
      if (remaining <= rel_tol * estimate) {
        result.value = estimate;
        result.converged = true;
        return result;
      }
    }
    last_gain = gain;
  }
  result.value = estimate;
  return result;
}

Eigen::MatrixXd DenseLaplacian(const WeightedGraph& g) {
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(g.n(), g.n());
  for (const Edge& e : g.edges()) {
    l(e.u, e.u) += e.weight;
    l(e.v, e.v) += e.weight;
    l(e.u, e.v) -= e.weight;
    l(e.v, e.u) -= e.weight;
  }
  return l;
}

Eigen::MatrixXd DenseLaplacian(Vertex n, std::span<const double> pair_weights) {
  if (pair_weights.size() != NumSlots(n)) {
    throw std::invalid_argument("pair weight vector must have C(n,2) entries");
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  std::size_t e = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++e) {
      const double w = pair_weights[e];
      l(u, u) += w;
      l(v, v) += w;
      l(u, v) -= w;
      l(v, u) -= w;
    }
  }
  return l;
}

double SymmetricSpectralNorm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double TvDistance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("probability tables differ in length");
  }
  double sum_p = 0, sum_q = 0, l1 = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum_p += p[i];
    sum_q += q[i];
    l1 += std::abs(p[i] - q[i]);
  }
  if (std::abs(sum_p - 1) > 1e-9 || std::abs(sum_q - 1) > 1e-9) {
    throw std::invalid_argument("probability tables must sum to 1");
  }
  return 0.5 * l1;
}

double MultinomialTvSlack(std::span<const double> reference,
                          std::uint64_t trials) {
  double total = 0;
  for (double p : reference) {
    total += std::sqrt(p * (1 - p) / static_cast<double>(trials));
  }
  return 0.5 * total;
}

EmpiricalLaw EmpiricalTopologyLaw(
    std::uint64_t ground_size, std::uint64_t k,
    const std::function<Topology(NoiseSource&)>& sample, std::uint64_t trials,
    std::uint64_t seed) {
  const SubsetIndexer indexer(ground_size, k);
  if (indexer.size() > kMaxEmpiricalStates) {
    throw std::length_error("empirical law limited to C(N,k) <= " +
                            std::to_string(kMaxEmpiricalStates));
  }
  if (trials < kMinEmpiricalTrials) {
    throw std::invalid_argument("empirical law needs at least " +
                                std::to_string(kMinEmpiricalTrials) +
                                " trials");
  }
  std::vector<std::uint64_t> counts(indexer.size(), 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    NoiseSource src = NoiseSource::Seeded(seed, trial);
    ++counts[indexer.Rank(sample(src))];
  }
  EmpiricalLaw law;
  law.trials = trials;
  law.frequencies.resize(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    law.frequencies[i] =
        static_cast<double>(counts[i]) / static_cast<double>(trials);
  }
  law.slack = 0.5 * std::sqrt(static_cast<double>(indexer.size()) /
                              static_cast<double>(trials));
  return law;
}

Eigen::MatrixXd ExactTransitionMatrix(const SparseExpDistribution& dist) {
  const SubsetIndexer indexer(dist.ground_size(), dist.k());
  if (indexer.size() > kMaxTransitionMatrixStates) {
    throw std::length_error("transition matrix limited to C(N,k) <= " +
                            std::to_string(kMaxTransitionMatrixStates));
  }
  const auto states = static_cast<Eigen::Index>(indexer.size());
  Eigen::MatrixXd p(states, states);
  for (Eigen::Index s = 0; s < states; ++s) {
    const Topology subset = indexer.Unrank(static_cast<std::uint64_t>(s));
    const std::vector<double> row = ExactTransitionRow(dist, subset);
    for (Eigen::Index t = 0; t < states; ++t) p(s, t) = row[t];
  }
  return p;
}

std::vector<double> StationaryDistribution(const Eigen::MatrixXd& transition) {
  const Eigen::Index n = transition.rows();
  // (P^T - I) p = 0 with the last equation replaced by sum p = 1.
  Eigen::MatrixXd a =
      transition.transpose() - Eigen::MatrixXd::Identity(n, n);
  a.row(n - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::VectorXd p = a.fullPivLu().solve(b);
  return std::vector<double>(p.data(), p.data() + n);
}

double DetailedBalanceViolation(const Eigen::MatrixXd& transition,
                                std::span<const double> pi) {
  double worst = 0;
  for (Eigen::Index s = 0; s < transition.rows(); ++s) {
    for (Eigen::Index t = s + 1; t < transition.cols(); ++t) {
      worst = std::max(worst, std::abs(pi[s] * transition(s, t) -
                                       pi[t] * transition(t, s)));
    }
  }
  return worst;
}

}  // namespace dpgraph
