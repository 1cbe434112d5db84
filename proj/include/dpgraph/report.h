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

#ifndef DPGRAPH_REPORT_H_
#define DPGRAPH_REPORT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "dpgraph/graph.h"
#include "dpgraph/mechanisms.h"

namespace dpgraph {

// Error metrics and timings of one release. Unset metrics serialize as null.
struct ErrorReport {
  std::string mechanism;
  Vertex n = 1;
  double eps = 0;
  double delta = 0;
  std::uint64_t seed = 0;
  nlohmann::json parameters = nlohmann::json::object();

  std::optional<double> l1;
  std::optional<double> eval_linear;
  std::optional<double> max_cut;
  std::optional<double> max_singleton_cut;
  std::optional<double> spectral;
  std::optional<bool> spectral_converged;

  double init_ms = 0;
  double release_ms = 0;
  std::optional<double> per_step_us;

  nlohmann::json ToJson() const;
};

struct MetricOptions {
  bool spectral = true;
  // Brute-force cut enumeration up to this many vertices.
  Vertex max_cut_vertices = 16;
  std::uint64_t spectral_seed = 0;
};

// G against a sparse release H.
void FillGraphMetrics(ErrorReport& report, const WeightedGraph& g,
                      const WeightedGraph& h, const MetricOptions& options = {});

// G against a signed dense pair vector, as released by AnalyzeGaussRelease.
// The max cut is left unset.
void FillDenseMetrics(ErrorReport& report, const WeightedGraph& g,
                      std::span<const double> dense,
                      const MetricOptions& options = {});

// Spectral error of a Laplacian sketch; only the spectral metric applies.
void FillSketchMetrics(ErrorReport& report, const WeightedGraph& g,
                       const LaplacianSketch& sketch);

// Accepts only dense-capable sizes.
inline constexpr Vertex kMaxDenseVertices = 5'000;

}  // namespace dpgraph

#endif  // DPGRAPH_REPORT_H_
