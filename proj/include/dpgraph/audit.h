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

// Exact and Monte Carlo checks of the exchange walk on small ground sets.

#ifndef DPGRAPH_AUDIT_H_
#define DPGRAPH_AUDIT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpgraph/random.h"
#include "dpgraph/sampler.h"

namespace dpgraph {

struct AuditConfig {
  std::uint64_t ground_size = 6;
  std::uint64_t k = 3;
  double eps = 1.0;
  double delta = 0.2;
  std::uint64_t trials = 200'000;
  // Overrides the mixing length when set.
  std::optional<std::uint64_t> steps;
  double mixing_multiplier = 1.0;
  std::uint64_t seed = 0;
  // Exact-check tolerance.
  double tolerance = 1e-10;
};

struct AuditCheck {
  std::string name;
  double value = 0;
  double threshold = 0;
  bool passed = false;
};

struct AuditResult {
  std::vector<SparseExpDistribution::Weight> weights;
  std::uint64_t steps = 0;
  std::vector<AuditCheck> checks;

  bool passed() const;
};

// Each index is zero with probability 1/2, else U[0, 3).
std::vector<SparseExpDistribution::Weight> RandomAuditWeights(
    std::uint64_t ground_size, NoiseSource& src);

// k heaviest indices (ties to the lower index), topped up with the
// lowest-index zero-weight ones. Sorted.
Topology HeaviestSubset(const SparseExpDistribution& dist);

// Row sums, detailed balance and stationary-vs-exact TV of the exact chain.
std::vector<AuditCheck> ExactChainChecks(const SparseExpDistribution& dist,
                                         double tolerance);

// Throws std::length_error when C(N, k) exceeds the oracle bounds.
AuditResult RunAudit(const AuditConfig& config);

}  // namespace dpgraph

#endif  // DPGRAPH_AUDIT_H_
