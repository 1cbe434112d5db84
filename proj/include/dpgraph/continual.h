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

// Binary-tree release of a graph under continual observation.

#ifndef DPGRAPH_CONTINUAL_H_
#define DPGRAPH_CONTINUAL_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dpgraph/graph.h"
#include "dpgraph/random.h"

namespace dpgraph {

struct StreamUpdate {
  EdgeIndex edge;
  double weight;  // >= 0
};

class StreamExhaustedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A one-shot private release applied to each dyadic partial sum.
using StaticMechanism =
    std::function<WeightedGraph(const WeightedGraph&, NoiseSource&)>;

StaticMechanism IdentityMechanism();
StaticMechanism FilterMechanism(const PrivacyBudget& budget);
// Public-count exchange walk release.
StaticMechanism WalkMechanism(const PrivacyBudget& budget,
                              double mixing_multiplier = 1.0);

// Index of the lowest set bit of t; t must be >= 1.
int LevelIndex(std::uint64_t t);

struct ContinualBudget {
  double eps0;
  double delta0;
};

// eps0 = eps / sqrt(ln T * ln(1/delta)), delta0 = delta; T = 1 keeps eps.
// The stream as a whole is then (eps, (T+1) delta)-private.
ContinualBudget ContinualBudgetFor(double eps, double delta,
                                   std::uint64_t rounds);

// Level j holds the sum of the last 2^j updates whenever bit j of the round
// counter is set; each update is privatized at most ceil(log2 T) + 1 times.
class PartialSumTree {
 public:
  PartialSumTree(Vertex n, std::uint64_t rounds, StaticMechanism mechanism);

  // Folds levels below j = LevelIndex(t) and the new update into level j,
  // privatizes it once and returns the sum of all live private levels.
  // Throws StreamExhaustedError past the declared round count.
  WeightedGraph Step(const StreamUpdate& update, NoiseSource& src);

  Vertex n() const { return n_; }
  std::uint64_t round() const { return round_; }
  std::uint64_t rounds() const { return rounds_; }
  int level_count() const { return static_cast<int>(raw_.size()); }

  // Sum of the live raw partial sums; equals the exact prefix graph.
  WeightedGraph RawPrefix() const;
  // Sum of the live private levels (what Step returned last).
  WeightedGraph PrivatePrefix() const;

  // Per-update count of privatize calls that included it, by round - 1.
  const std::vector<std::uint32_t>& inclusions() const { return inclusions_; }
  // Edge entries read while folding plus entries handed to the mechanism.
  std::uint64_t edge_touches() const { return edge_touches_; }
  std::uint64_t privatize_calls() const { return privatize_calls_; }

 private:
  Vertex n_;
  std::uint64_t rounds_;
  StaticMechanism mechanism_;
  std::uint64_t round_ = 0;
  std::vector<WeightedGraph> raw_;
  std::vector<WeightedGraph> released_;
  std::vector<std::vector<std::uint64_t>> members_;  // update ids per level
  std::vector<std::uint32_t> inclusions_;
  std::uint64_t edge_touches_ = 0;
  std::uint64_t privatize_calls_ = 0;
};

WeightedGraph SumGraphs(Vertex n, std::span<const WeightedGraph> graphs);

}  // namespace dpgraph

#endif  // DPGRAPH_CONTINUAL_H_
