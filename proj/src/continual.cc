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

#include "dpgraph/continual.h"

#include <bit>
#include <cmath>
#include <string>

#include "dpgraph/mechanisms.h"

namespace dpgraph {

StaticMechanism IdentityMechanism() {
  return [](const WeightedGraph& g, NoiseSource&) { return g; };
}

StaticMechanism FilterMechanism(const PrivacyBudget& budget) {
  return [budget](const WeightedGraph& g, NoiseSource& src) {
    return FilterRelease(g, budget, src);
  };
}

StaticMechanism WalkMechanism(const PrivacyBudget& budget,
                              double mixing_multiplier) {
  return [budget, mixing_multiplier](const WeightedGraph& g, NoiseSource& src) {
    MechanismConfig config{budget};
    config.mixing_multiplier = mixing_multiplier;
    return ExchangeRelease(g, config, EdgeCountMode::kPublic, src).graph;
  };
}

int LevelIndex(std::uint64_t t) {
  if (t < 1) throw std::invalid_argument("round index must be >= 1");
  return std::countr_zero(t);
}

ContinualBudget ContinualBudgetFor(double eps, double delta,
                                   std::uint64_t rounds) {
  (void)PrivacyBudget(eps, delta);
  if (rounds < 1) throw std::invalid_argument("round count must be >= 1");
  const double log_t = std::log(static_cast<double>(rounds));
  if (log_t <= 0) return {eps, delta};
  return {eps / std::sqrt(log_t * std::log(1.0 / delta)), delta};
}

WeightedGraph SumGraphs(Vertex n, std::span<const WeightedGraph> graphs) {
  std::vector<WeightedGraph::Entry> entries;
  for (const WeightedGraph& g : graphs) {
    for (const Edge& e : g.edges()) entries.push_back({e.index, e.weight});
  }
  return WeightedGraph::FromEntries(n, std::move(entries));
}

PartialSumTree::PartialSumTree(Vertex n, std::uint64_t rounds,
                               StaticMechanism mechanism)
    : n_(n), rounds_(rounds), mechanism_(std::move(mechanism)) {
  if (rounds < 1) throw std::invalid_argument("round count must be >= 1");
  const int levels = std::bit_width(rounds);  // floor(log2 T) + 1
  raw_.assign(levels, WeightedGraph(n));
  released_.assign(levels, WeightedGraph(n));
  members_.resize(levels);
  inclusions_.reserve(rounds);
}

WeightedGraph PartialSumTree::Step(const StreamUpdate& update,
                                   NoiseSource& src) {
  if (round_ >= rounds_) {
    throw StreamExhaustedError("stream declared " + std::to_string(rounds_) +
                               " rounds");
  }
  if (!(update.weight >= 0) || !std::isfinite(update.weight)) {
    throw std::invalid_argument("stream weights must be finite and >= 0");
  }
  if (update.edge >= NumSlots(n_)) {
    throw std::invalid_argument("stream edge index out of range");
  }
  const std::uint64_t t = ++round_;
  const int j = LevelIndex(t);

  std::vector<WeightedGraph::Entry> folded;
  std::vector<std::uint64_t> ids;
  for (int l = 0; l < j; ++l) {
    for (const Edge& e : raw_[l].edges()) folded.push_back({e.index, e.weight});
    edge_touches_ += raw_[l].edge_count();
    ids.insert(ids.end(), members_[l].begin(), members_[l].end());
    raw_[l] = WeightedGraph(n_);
    released_[l] = WeightedGraph(n_);
    members_[l].clear();
  }
  folded.push_back({update.edge, update.weight});
  ids.push_back(t - 1);
  inclusions_.push_back(0);

  raw_[j] = WeightedGraph::FromEntries(n_, std::move(folded));
  members_[j] = std::move(ids);
  edge_touches_ += raw_[j].edge_count();
  released_[j] = mechanism_(raw_[j], src);
  ++privatize_calls_;
  for (std::uint64_t id : members_[j]) ++inclusions_[id];
  return PrivatePrefix();
}

WeightedGraph PartialSumTree::RawPrefix() const { return SumGraphs(n_, raw_); }

WeightedGraph PartialSumTree::PrivatePrefix() const {
  return SumGraphs(n_, released_);
}

}  // namespace dpgraph
