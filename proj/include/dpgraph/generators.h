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

#ifndef DPGRAPH_GENERATORS_H_
#define DPGRAPH_GENERATORS_H_

#include <string>

#include "dpgraph/graph.h"
#include "dpgraph/random.h"

namespace dpgraph {

enum class WeightDistribution { kUniform, kFixed };

// Each present edge gets U[1, scale] (kUniform) or exactly scale (kFixed).
struct WeightModel {
  double scale = 1.0;
  WeightDistribution distribution = WeightDistribution::kUniform;
};

// "1", "sqrt_n", "n" or a positive number.
double ResolveWeightScale(const std::string& spec, Vertex n);
WeightDistribution ParseWeightDistribution(const std::string& name);

// G(n, p) in O(n + m) by geometric skipping over edge indices. Draws, per
// edge in ascending index: one skip uniform, then one weight uniform.
WeightedGraph ErdosRenyi(Vertex n, double p, const WeightModel& weights,
                         NoiseSource& src);

// G(n, c/n): expected average degree ~c regardless of n.
inline WeightedGraph ConstantDegreeGraph(Vertex n, double avg_degree,
                                         const WeightModel& weights,
                                         NoiseSource& src) {
  return ErdosRenyi(n, avg_degree / static_cast<double>(n), weights, src);
}

}  // namespace dpgraph

#endif  // DPGRAPH_GENERATORS_H_
