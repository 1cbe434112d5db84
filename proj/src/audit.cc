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

#include "dpgraph/audit.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpgraph/evaluation.h"

namespace dpgraph {

bool AuditResult::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const AuditCheck& c) { return c.passed; });
}

std::vector<SparseExpDistribution::Weight> RandomAuditWeights(
    std::uint64_t ground_size, NoiseSource& src) {
  std::vector<SparseExpDistribution::Weight> weights;
  for (EdgeIndex e = 0; e < ground_size; ++e) {
    const bool present = src.Uniform() < 0.5;
    const double w = 3.0 * src.Uniform();
    if (present && w > 0) weights.push_back({e, w});
  }
  return weights;
}

Topology HeaviestSubset(const SparseExpDistribution& dist) {
  const auto support = dist.support();
  std::vector<std::size_t> order(support.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return support[a].weight > support[b].weight;
  });
  Topology s;
  for (std::size_t i = 0; i < order.size() && s.size() < dist.k(); ++i) {
    s.push_back(support[order[i]].index);
  }
  for (EdgeIndex e = 0; s.size() < dist.k(); ++e) {
    if (!dist.SupportPosition(e)) s.push_back(e);
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<AuditCheck> ExactChainChecks(const SparseExpDistribution& dist,
                                         double tolerance) {
  const Eigen::MatrixXd p = ExactTransitionMatrix(dist);
  const std::vector<double> pi = ExactPi(dist);
  std::vector<AuditCheck> checks;

  double row_error = 0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    row_error = std::max(row_error, std::abs(p.row(i).sum() - 1.0));
  }
  checks.push_back({"row_sums", row_error, tolerance, row_error < tolerance});

  const double balance = DetailedBalanceViolation(p, pi);
  checks.push_back({"detailed_balance", balance, tolerance, balance < tolerance});

  const double tv = TvDistance(StationaryDistribution(p), pi);
  checks.push_back({"stationary_tv", tv, tolerance, tv < tolerance});

  if (dist.eps() == 0) {
    const double uniform = 1.0 / static_cast<double>(pi.size());
    double gap = 0;
    for (double q : pi) gap = std::max(gap, std::abs(q - uniform));
    checks.push_back({"uniform_at_eps0", gap, tolerance, gap < tolerance});
  }
  return checks;
}

AuditResult RunAudit(const AuditConfig& config) {
  if (Binomial(config.ground_size, config.k) > kMaxTransitionMatrixStates) {
    throw std::length_error("audit is limited to C(N, k) <= " +
                            std::to_string(kMaxTransitionMatrixStates));
  }
  AuditResult result;
  NoiseSource weight_src = NoiseSource::Seeded(config.seed, 0);
  result.weights = RandomAuditWeights(config.ground_size, weight_src);
  const SparseExpDistribution dist(config.ground_size, config.k, config.eps,
                                   result.weights);
  result.checks = ExactChainChecks(dist, config.tolerance);

  result.steps = config.steps.value_or(
      MixingSteps(config.k, config.ground_size, config.eps, config.delta,
                  config.mixing_multiplier));
  const Topology start = HeaviestSubset(dist);
  const std::uint64_t steps = result.steps;
  const EmpiricalLaw law = EmpiricalTopologyLaw(
      config.ground_size, config.k,
      [&](NoiseSource& src) { return RunWalk(dist, start, steps, src); },
      config.trials, DeriveSeed(config.seed, 1));
  const std::vector<double> pi = ExactPi(dist);
  const double tv = TvDistance(law.frequencies, pi);
  const double bound = config.delta / (std::exp(2 * config.eps) + 1) +
                       3 * MultinomialTvSlack(pi, config.trials);
  result.checks.push_back({"empirical_tv", tv, bound, tv <= bound});
  return result;
}

}  // namespace dpgraph
