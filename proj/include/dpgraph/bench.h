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

#ifndef DPGRAPH_BENCH_H_
#define DPGRAPH_BENCH_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dpgraph/generators.h"
#include "dpgraph/graph.h"

namespace dpgraph {

struct BenchSpec {
  std::vector<Vertex> sizes;
  std::vector<std::string> mechanisms;
  // Each entry is "1", "sqrt_n", "n" or a number.
  std::vector<std::string> weight_scales = {"1"};
  WeightDistribution weight_distribution = WeightDistribution::kUniform;
  double avg_degree = 4.0;
  std::uint64_t trials = 5;
  std::uint64_t seed = 0;
  double eps = 1.0;
  // Defaults to n^-10 per size.
  std::optional<double> delta;
  double mixing_multiplier = 1.0;
  bool spectral = true;
  // Spectral error is skipped (NaN) above this size.
  Vertex spectral_max_n = 20'000;
  unsigned jobs = 1;

  // Throws std::invalid_argument on an empty or malformed spec.
  void Validate() const;
};

struct BenchRow {
  Vertex n;
  std::string mech;  // "<mechanism>/W=<scale>"
  std::string metric;
  double value;
  std::uint64_t seed;
};

// Metrics emitted per (n, mechanism, W, trial), in this order.
const std::vector<std::string>& BenchMetrics();

// Per-trial rows grouped by (n, W, trial, mechanism), followed by one
// "mean_<metric>" row per (n, mechanism, W, metric) carrying the base seed.
// A cell that throws yields NaN for every metric and the run continues.
// The trial graph G(n, c/n) is shared by every mechanism of that trial.
std::vector<BenchRow> RunBench(
    const BenchSpec& spec,
    const std::function<void(const std::string&)>& log = nullptr);

void WriteBenchCsv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace dpgraph

#endif  // DPGRAPH_BENCH_H_
