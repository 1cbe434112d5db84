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

#include "dpgraph/driver.h"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace dpgraph {

const std::vector<std::string>& MechanismNames() {
  static const std::vector<std::string> names = {
      "filter", "walk", "walk-confidential", "topo-laplace", "gauss", "jl"};
  return names;
}

MechanismKind ParseMechanism(const std::string& name) {
  const auto& names = MechanismNames();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<MechanismKind>(i);
  }
  throw std::invalid_argument("unknown mechanism '" + name + "'");
}

std::string MechanismName(MechanismKind kind) {
  return MechanismNames().at(static_cast<std::size_t>(kind));
}

double DefaultDelta(Vertex n) {
  const double d = std::pow(static_cast<double>(n), -10.0);
  return d < 1.0 ? d : 0.5;
}

ReleaseOutcome ReleaseAndEvaluate(MechanismKind kind, const WeightedGraph& g,
                                  const MechanismConfig& config,
                                  NoiseSource& src,
                                  const MetricOptions& options) {
  config.Validate();
  ReleaseOutcome out;
  ErrorReport& r = out.report;
  r.mechanism = MechanismName(kind);
  r.n = g.n();
  r.eps = config.budget.eps();
  r.delta = config.budget.delta();

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto stop = [&] {
    r.release_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  };

  switch (kind) {
    case MechanismKind::kFilter:
      out.graph = FilterRelease(g, config.budget, src);
      stop();
      r.parameters["threshold"] = FilterThreshold(g.n(), config.budget);
      break;
    case MechanismKind::kWalk:
    case MechanismKind::kWalkConfidential: {
      const EdgeCountMode mode = kind == MechanismKind::kWalk
                                     ? EdgeCountMode::kPublic
                                     : EdgeCountMode::kConfidential;
      ExchangeReleaseResult res = ExchangeRelease(g, config, mode, src);
      stop();
      r.parameters["k"] = res.k;
      r.parameters["walk_steps"] = res.walk_steps;
      r.parameters["mixing_multiplier"] = config.mixing_multiplier;
      if (mode == EdgeCountMode::kConfidential) {
        r.parameters["beta"] = config.effective_beta();
      }
      if (res.walk_steps > 0) {
        r.per_step_us = r.release_ms * 1000.0 / static_cast<double>(res.walk_steps);
      }
      out.graph = std::move(res.graph);
      break;
    }
    case MechanismKind::kTopoLaplace: {
      KnownTopologyRelease res = TopologyKnownRelease(g, config.budget.eps(), src);
      stop();
      r.parameters["zeroed"] = res.zeroed.size();
      out.graph = std::move(res.graph);
      break;
    }
    case MechanismKind::kGauss: {
      if (g.n() > kMaxDenseVertices) {
        throw std::length_error("gauss is limited to n <= " +
                                std::to_string(kMaxDenseVertices));
      }
      GaussRelease res = AnalyzeGaussRelease(g, config.budget, src);
      stop();
      r.parameters["sigma"] = res.sigma;
      out.graph = res.positive_view;
      out.gauss = std::move(res);
      break;
    }
    case MechanismKind::kJl: {
      if (g.n() > kMaxDenseVertices) {
        throw std::length_error("jl is limited to n <= " +
                                std::to_string(kMaxDenseVertices));
      }
      LaplacianSketch res = JlRelease(g, config, src);
      stop();
      r.parameters["r"] = res.r;
      r.parameters["eta"] = config.jl_eta;
      out.sketch = std::move(res);
      break;
    }
  }

  if (out.gauss) {
    FillDenseMetrics(r, g, out.gauss->dense, options);
  } else if (out.sketch) {
    FillSketchMetrics(r, g, *out.sketch);
  } else {
    FillGraphMetrics(r, g, *out.graph, options);
  }
  return out;
}

}  // namespace dpgraph
