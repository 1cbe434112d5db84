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

#ifndef DPGRAPH_WEIGHT_TREE_H_
#define DPGRAPH_WEIGHT_TREE_H_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "dpgraph/random.h"

namespace dpgraph {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
inline double LogAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a))
               : b + std::log1p(std::exp(a - b));
}

double LogSumExp(std::span<const double> values);

// Categorical sampler over a fixed set of leaves, each with a log-mass and an
// availability bit, plus one aggregate "lump" leaf whose log-mass is
// ln(lump_count). Internal nodes hold the logsumexp of their children and are
// recomputed from them on every update, so there is no incremental drift.
// Updates and draws touch O(log leaves) nodes.
class WeightTree {
 public:
  static constexpr std::size_t kLump = static_cast<std::size_t>(-1);

  WeightTree() = default;
  // available may be empty (all leaves available) or match log_mass in size.
  WeightTree(std::vector<double> log_mass, std::span<const std::uint8_t> available,
             std::uint64_t lump_count);

  std::size_t leaf_count() const { return log_mass_.size(); }
  bool available(std::size_t leaf) const { return available_[leaf] != 0; }
  double leaf_log_mass(std::size_t leaf) const { return log_mass_[leaf]; }
  std::uint64_t lump_count() const { return lump_count_; }

  void SetAvailable(std::size_t leaf, bool available);
  void SetLumpCount(std::uint64_t count) { lump_count_ = count; }

  // logsumexp over available leaves and the lump.
  double root_log_mass() const {
    return LogAddExp(support_log_mass(), LumpLogMass());
  }
  double support_log_mass() const {
    return node_.empty() ? kNegInf : node_[1];
  }

  // O(leaves) recomputation from scratch, for consistency checks.
  double RecomputeRootLogMass() const;

  // Draws an available leaf with probability proportional to its mass, or
  // kLump with probability lump_count / total. One uniform per tree level
  // plus one for the lump decision.
  std::size_t Sample(NoiseSource& src) const;

 private:
  double LumpLogMass() const {
    return lump_count_ == 0 ? kNegInf
                            : std::log(static_cast<double>(lump_count_));
  }

  std::size_t capacity_ = 0;  // power of two >= leaf_count
  std::vector<double> node_;  // 1-based heap layout, leaves at [capacity_, 2*capacity_)
  std::vector<double> log_mass_;
  std::vector<std::uint8_t> available_;
  std::uint64_t lump_count_ = 0;
};

}  // namespace dpgraph

#endif  // DPGRAPH_WEIGHT_TREE_H_
