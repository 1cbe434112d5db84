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

#include "dpgraph/generators.h"

#include <cmath>
#include <stdexcept>

namespace dpgraph {

double ResolveWeightScale(const std::string& spec, Vertex n) {
  if (spec == "1") return 1.0;
  if (spec == "sqrt_n") return std::sqrt(static_cast<double>(n));
  if (spec == "n") return static_cast<double>(n);
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(spec, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != spec.size() || !(value > 0) || !std::isfinite(value)) {
    throw std::invalid_argument("weight scale must be 1, sqrt_n, n or a "
                                "positive number, got '" + spec + "'");
  }
  return value;
}

WeightDistribution ParseWeightDistribution(const std::string& name) {
  if (name == "uniform") return WeightDistribution::kUniform;
  if (name == "fixed") return WeightDistribution::kFixed;
  throw std::invalid_argument("weight distribution must be uniform or fixed");
}

WeightedGraph ErdosRenyi(Vertex n, double p, const WeightModel& weights,
                         NoiseSource& src) {
  if (!(p >= 0)) throw std::invalid_argument("edge probability must be >= 0");
  if (!(weights.scale >= 1) || !std::isfinite(weights.scale)) {
    throw std::invalid_argument("weight scale must be >= 1");
  }
  const std::uint64_t slots = NumSlots(n);
  std::vector<WeightedGraph::Entry> entries;
  auto draw_weight = [&]() {
    if (weights.distribution == WeightDistribution::kFixed) return weights.scale;
    return 1.0 + (weights.scale - 1.0) * src.Uniform();
  };
  if (p >= 1) {
    entries.reserve(slots);
    for (EdgeIndex e = 0; e < slots; ++e) entries.push_back({e, draw_weight()});
    return WeightedGraph::FromEntries(n, std::move(entries));
  }
  if (p == 0) return WeightedGraph(n);
  entries.reserve(static_cast<std::size_t>(p * static_cast<double>(slots) * 1.1) + 16);
  const double log_q = std::log1p(-p);
  double position = -1;  // last chosen index, as a double to absorb huge skips
  while (true) {
    position += 1 + std::floor(std::log(src.OpenUniform()) / log_q);
    if (position >= static_cast<double>(slots)) break;
    entries.push_back({static_cast<EdgeIndex>(position), draw_weight()});
  }
  return WeightedGraph::FromEntries(n, std::move(entries));
}

}  // namespace dpgraph
