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

#include "dpgraph/weight_tree.h"

#include <algorithm>
#include <stdexcept>

namespace dpgraph {

double LogSumExp(std::span<const double> values) {
  double hi = kNegInf;
  for (double v : values) hi = std::max(hi, v);
  if (hi == kNegInf) return kNegInf;
  double sum = 0;
  for (double v : values) sum += std::exp(v - hi);
  return hi + std::log(sum);
}

WeightTree::WeightTree(std::vector<double> log_mass,
                       std::span<const std::uint8_t> available,
                       std::uint64_t lump_count)
    : log_mass_(std::move(log_mass)), lump_count_(lump_count) {
  if (!available.empty() && available.size() != log_mass_.size()) {
    throw std::invalid_argument("availability mask size mismatch");
  }
  for (double m : log_mass_) {
    if (std::isnan(m) || m == std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument("leaf log-mass must be finite or -inf");
    }
  }
  available_.assign(log_mass_.size(), 1);
  if (!available.empty()) {
    std::copy(available.begin(), available.end(), available_.begin());
  }
  if (log_mass_.empty()) return;
  capacity_ = 1;
  while (capacity_ < log_mass_.size()) capacity_ <<= 1;
  node_.assign(2 * capacity_, kNegInf);
  for (std::size_t i = 0; i < log_mass_.size(); ++i) {
    if (available_[i]) node_[capacity_ + i] = log_mass_[i];
  }
  for (std::size_t i = capacity_ - 1; i >= 1; --i) {
    node_[i] = LogAddExp(node_[2 * i], node_[2 * i + 1]);
  }
}

void WeightTree::SetAvailable(std::size_t leaf, bool available) {
  available_[leaf] = available ? 1 : 0;
  std::size_t i = capacity_ + leaf;
  node_[i] = available ? log_mass_[leaf] : kNegInf;
  for (i >>= 1; i >= 1; i >>= 1) {
    node_[i] = LogAddExp(node_[2 * i], node_[2 * i + 1]);
  }
}

double WeightTree::RecomputeRootLogMass() const {
  std::vector<double> masses;
  masses.reserve(log_mass_.size() + 1);
  for (std::size_t i = 0; i < log_mass_.size(); ++i) {
    if (available_[i]) masses.push_back(log_mass_[i]);
  }
  masses.push_back(LumpLogMass());
  return LogSumExp(masses);
}

std::size_t WeightTree::Sample(NoiseSource& src) const {
  const double support = support_log_mass();
  const double lump = LumpLogMass();
  const double total = LogAddExp(support, lump);
  if (total == kNegInf) {
    throw std::logic_error("WeightTree::Sample on an empty tree");
  }
  if (src.Uniform() < std::exp(lump - total)) return kLump;
  if (support == kNegInf) return kLump;  // only reachable through rounding
  std::size_t i = 1;
  while (i < capacity_) {
    const double left = node_[2 * i];
    const double right = node_[2 * i + 1];
    if (right == kNegInf) {
      i = 2 * i;
    } else if (left == kNegInf) {
      i = 2 * i + 1;
    } else {
      // P(left) = 1 / (1 + exp(right - left)).
      const double p_left = 1.0 / (1.0 + std::exp(right - left));
      i = src.Uniform() < p_left ? 2 * i : 2 * i + 1;
    }
  }
  return i - capacity_;
}

}  // namespace dpgraph
