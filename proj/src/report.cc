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

#include "dpgraph/report.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dpgraph/evaluation.h"

namespace dpgraph {
namespace {

nlohmann::json Optional(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

void CheckDenseSize(Vertex n) {
  if (n > kMaxDenseVertices) {
    throw std::length_error("dense evaluation is limited to n <= " +
                            std::to_string(kMaxDenseVertices));
  }
}

}  // namespace

nlohmann::json ErrorReport::ToJson() const {
  nlohmann::json metrics = {
      {"l1", Optional(l1)},
      {"eval", Optional(eval_linear)},
      {"max_cut", Optional(max_cut)},
      {"max_singleton_cut", Optional(max_singleton_cut)},
      {"spectral", Optional(spectral)},
  };
  if (spectral_converged) metrics["spectral_converged"] = *spectral_converged;
  nlohmann::json timings = {{"init_ms", init_ms}, {"release_ms", release_ms}};
  if (per_step_us) timings["per_step_us"] = *per_step_us;
  return {{"mechanism", mechanism}, {"n", n},         {"eps", eps},
          {"delta", delta},         {"seed", seed},   {"parameters", parameters},
          {"metrics", metrics},     {"timings", timings}};
}

void FillGraphMetrics(ErrorReport& report, const WeightedGraph& g,
                      const WeightedGraph& h, const MetricOptions& options) {
  report.l1 = L1Distance(g, h);
  report.eval_linear = EvalLinearWorst(g, h);
  report.max_singleton_cut = MaxSingletonCutError(g, h);
  report.max_cut.reset();
  if (g.n() <= options.max_cut_vertices && g.n() <= kMaxBruteForceVertices) {
    report.max_cut = MaxCutError(g, h).value;
  }
  if (options.spectral) {
    const SpectralNormResult s = SpectralNormDiff(g, h, options.spectral_seed);
    report.spectral = s.value;
    report.spectral_converged = s.converged;
  }
}

void FillDenseMetrics(ErrorReport& report, const WeightedGraph& g,
                      std::span<const double> dense,
                      const MetricOptions& options) {
  const Vertex n = g.n();
  if (dense.size() != g.num_slots()) {
    throw std::invalid_argument("dense release has the wrong length");
  }
  std::vector<double> diff(dense.begin(), dense.end());
  for (const Edge& e : g.edges()) diff[e.index] -= e.weight;
  double l1 = 0, pos = 0, neg = 0;
  std::vector<double> degree_diff(static_cast<std::size_t>(n), 0.0);
  EdgeIndex e = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++e) {
      const double d = diff[e];
      l1 += std::abs(d);
      (d > 0 ? pos : neg) += std::abs(d);
      degree_diff[u] += d;
      degree_diff[v] += d;
    }
  }
  report.l1 = l1;
  report.eval_linear = std::max(pos, neg);
  double singleton = 0;
  for (double d : degree_diff) singleton = std::max(singleton, std::abs(d));
  report.max_singleton_cut = singleton;
  report.max_cut.reset();
  if (options.spectral) {
    CheckDenseSize(n);
    report.spectral = SymmetricSpectralNorm(DenseLaplacian(n, diff));
    report.spectral_converged = true;
  }
}

void FillSketchMetrics(ErrorReport& report, const WeightedGraph& g,
                       const LaplacianSketch& sketch) {
  CheckDenseSize(g.n());
  report.l1.reset();
  report.eval_linear.reset();
  report.max_cut.reset();
  report.max_singleton_cut.reset();
  report.spectral = SymmetricSpectralNorm(DenseLaplacian(g) - sketch.matrix);
  report.spectral_converged = true;
}

}  // namespace dpgraph
