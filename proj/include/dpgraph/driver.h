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

// Name-based dispatch from a mechanism id to a release plus its report.

#ifndef DPGRAPH_DRIVER_H_
#define DPGRAPH_DRIVER_H_

#include <optional>
#include <string>
#include <vector>

#include "dpgraph/graph.h"
#include "dpgraph/mechanisms.h"
#include "dpgraph/random.h"
#include "dpgraph/report.h"

namespace dpgraph {

enum class MechanismKind {
  kFilter,
  kWalk,
  kWalkConfidential,
  kTopoLaplace,
  kGauss,
  kJl,
};

// Throws std::invalid_argument for an unknown id.
MechanismKind ParseMechanism(const std::string& name);
std::string MechanismName(MechanismKind kind);
const std::vector<std::string>& MechanismNames();

struct ReleaseOutcome {
  ErrorReport report;
  // Sparse release; for gauss this is the positive part of the dense one.
  std::optional<WeightedGraph> graph;
  std::optional<GaussRelease> gauss;
  std::optional<LaplacianSketch> sketch;
};

// Runs the mechanism, timing only the release itself, then fills the
// report metrics. report.seed and report.init_ms are left for the caller.
ReleaseOutcome ReleaseAndEvaluate(MechanismKind kind, const WeightedGraph& g,
                                  const MechanismConfig& config,
                                  NoiseSource& src,
                                  const MetricOptions& options = {});

// n^-10, clamped into (0, 1) for tiny n.
double DefaultDelta(Vertex n);

}  // namespace dpgraph

#endif  // DPGRAPH_DRIVER_H_
