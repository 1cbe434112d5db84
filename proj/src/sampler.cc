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

#include "dpgraph/sampler.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpgraph {
namespace {

void ValidateSubset(const SparseExpDistribution& dist,
                    std::span<const EdgeIndex> s) {
  if (s.size() != dist.k()) {
    throw std::invalid_argument("subset has size " + std::to_string(s.size()) +
                                ", expected k=" + std::to_string(dist.k()));
  }
  std::vector<EdgeIndex> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("subset contains a duplicate index");
  }
  if (!sorted.empty() && sorted.back() >= dist.ground_size()) {
    throw std::invalid_argument("subset index outside the ground set");
  }
}

void RequireStates(std::uint64_t states, std::uint64_t bound,
                   const char* what) {
  if (states > bound) {
    throw std::length_error(std::string(what) + ": C(N,k)=" +
                            std::to_string(states) + " exceeds the bound " +
                            std::to_string(bound));
  }
}

// Advances a sorted k-subset to its colex successor; false after the last.
bool NextColex(std::vector<EdgeIndex>& s, std::uint64_t ground_size) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    const EdgeIndex limit = i + 1 < k ? s[i + 1] : ground_size;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (std::size_t j = 0; j < i; ++j) s[j] = j;
      return true;
    }
  }
  return false;
}

}  // namespace

SparseExpDistribution::SparseExpDistribution(std::uint64_t ground_size,
                                             std::uint64_t k, double eps,
                                             std::vector<Weight> weights)
    : ground_size_(ground_size), k_(k), eps_(eps) {
  if (k > ground_size) throw std::invalid_argument("k exceeds ground size");
  if (!(eps >= 0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite and >= 0");
  }
  std::sort(weights.begin(), weights.end(),
            [](const Weight& a, const Weight& b) { return a.index < b.index; });
  support_.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const Weight& w = weights[i];
    if (w.index >= ground_size) {
      throw std::invalid_argument("weight index outside the ground set");
    }
    if (i > 0 && weights[i - 1].index == w.index) {
      throw std::invalid_argument("duplicate weight index");
    }
    if (!(w.weight >= 0) || !std::isfinite(w.weight)) {
      throw std::invalid_argument("weights must be finite and >= 0");
    }
    if (w.weight > 0) support_.push_back(w);
  }
}

SparseExpDistribution SparseExpDistribution::FromGraph(const WeightedGraph& g,
                                                       std::uint64_t k,
                                                       double eps) {
  std::vector<Weight> weights;
  weights.reserve(g.edge_count());
  for (const Edge& e : g.edges()) weights.push_back({e.index, e.weight});
  return SparseExpDistribution(g.num_slots(), k, eps, std::move(weights));
}

std::optional<std::size_t> SparseExpDistribution::SupportPosition(
    EdgeIndex e) const {
  auto it = std::lower_bound(
      support_.begin(), support_.end(), e,
      [](const Weight& w, EdgeIndex index) { return w.index < index; });
  if (it == support_.end() || it->index != e) return std::nullopt;
  return static_cast<std::size_t>(it - support_.begin());
}

double SparseExpDistribution::weight(EdgeIndex e) const {
  auto pos = SupportPosition(e);
  return pos ? support_[*pos].weight : 0.0;
}

double LogMass(const SparseExpDistribution& dist,
               std::span<const EdgeIndex> s) {
  ValidateSubset(dist, s);
  double total = 0;
  for (EdgeIndex e : s) total += dist.weight(e);
  return dist.eps() * total;
}

double LogMassL1Form(const SparseExpDistribution& dist,
                     std::span<const EdgeIndex> s) {
  ValidateSubset(dist, s);
  std::vector<EdgeIndex> sorted(s.begin(), s.end());
  std::sort(sorted.begin(), sorted.end());
  double norm = 0, residual = 0;
  for (const auto& w : dist.support()) {
    norm += w.weight;
    if (!std::binary_search(sorted.begin(), sorted.end(), w.index)) {
      residual += w.weight;
    }
  }
  return dist.eps() * norm - dist.eps() * residual;
}

std::uint64_t MixingSteps(std::uint64_t k, std::uint64_t ground_size,
                          double eps, double delta, double multiplier) {
  if (k < 1 || k > ground_size) {
    throw std::invalid_argument("mixing steps need 1 <= k <= N");
  }
  if (!(eps >= 0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be finite and >= 0");
  }
  if (!(delta > 0 && delta < 1)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
  if (!(multiplier > 0) || !std::isfinite(multiplier)) {
    throw std::invalid_argument("mixing multiplier must be positive");
  }
  const double kd = static_cast<double>(k);
  const double n = std::max(static_cast<double>(ground_size), 3.0);
  // ln((e^{2 eps} + 1) / delta), written to stay finite for large eps.
  const double log_inv_alpha =
      2.0 * eps + std::log1p(std::exp(-2.0 * eps)) - std::log(delta);
  const double per_element =
      std::log(kd * std::log(n) + 2.0) + 2.0 * log_inv_alpha + std::log(4.0);
  const double steps = std::ceil(multiplier * kd * per_element);
  if (steps >= 0x1.0p63) throw std::overflow_error("walk length overflows");
  return static_cast<std::uint64_t>(steps);
}

ExchangeWalk::IndexSet::IndexSet(std::size_t max_size) {
  std::size_t capacity = 16;
  int bits = 4;
  while (capacity < 2 * max_size + 1) {
    capacity <<= 1;
    ++bits;
  }
  slots_.assign(capacity, kEmpty);
  mask_ = capacity - 1;
  shift_ = 64 - bits;
}

bool ExchangeWalk::IndexSet::Insert(EdgeIndex e) {
  std::size_t i = Home(e);
  while (slots_[i] != kEmpty) {
    if (slots_[i] == e) return false;
    i = (i + 1) & mask_;
  }
  slots_[i] = e;
  return true;
}

bool ExchangeWalk::IndexSet::Contains(EdgeIndex e) const {
  for (std::size_t i = Home(e); slots_[i] != kEmpty; i = (i + 1) & mask_) {
    if (slots_[i] == e) return true;
  }
  return false;
}

void ExchangeWalk::IndexSet::Erase(EdgeIndex e) {
  std::size_t hole = Home(e);
  while (slots_[hole] != e) hole = (hole + 1) & mask_;
  // Pull later entries of the cluster back over the hole when their home
  // slot does not lie strictly between the hole and their position.
  for (std::size_t j = (hole + 1) & mask_; slots_[j] != kEmpty;
       j = (j + 1) & mask_) {
    const std::size_t home = Home(slots_[j]);
    if (((j - home) & mask_) >= ((j - hole) & mask_)) {
      slots_[hole] = slots_[j];
      hole = j;
    }
  }
  slots_[hole] = kEmpty;
}

ExchangeWalk::ExchangeWalk(const SparseExpDistribution& dist,
                           std::span<const EdgeIndex> initial)
    : dist_(dist) {
  ValidateSubset(dist, initial);
  const auto support = dist.support();
  std::vector<double> log_mass(support.size());
  std::vector<std::uint8_t> available(support.size(), 1);
  for (std::size_t i = 0; i < support.size(); ++i) {
    log_mass[i] = dist.eps() * support[i].weight;
  }
  blocked_ = IndexSet(support.size() + initial.size());
  for (const auto& entry : support) blocked_.Insert(entry.index);
  std::uint64_t zero_members = 0;
  members_.reserve(initial.size());
  for (EdgeIndex e : initial) {
    if (auto pos = dist.SupportPosition(e)) {
      available[*pos] = 0;
      members_.push_back(kLeafTag | *pos);
    } else {
      blocked_.Insert(e);
      members_.push_back(e);
      ++zero_members;
    }
  }
  const std::uint64_t zeros = dist.ground_size() - support.size();
  tree_ = WeightTree(std::move(log_mass), available, zeros - zero_members);
}

void ExchangeWalk::Step(NoiseSource& src) {
  if (members_.empty()) return;
  StepAt(src.UniformIndex(members_.size()), kNoCandidate, src);
}

void ExchangeWalk::StepAt(std::size_t pos, EdgeIndex candidate,
                          NoiseSource& src) {
  const std::uint64_t removed = members_[pos];
  members_[pos] = members_.back();
  members_.pop_back();
  const bool removed_zero = (removed & kLeafTag) == 0;
  if (removed_zero) {
    tree_.SetLumpCount(tree_.lump_count() + 1);
  } else {
    tree_.SetAvailable(removed & ~kLeafTag, true);
  }

  const std::size_t choice = tree_.Sample(src);
  if (removed_zero) blocked_.Erase(removed);
  if (choice == WeightTree::kLump) {
    // Uniform over zero-weight indices outside the current set.
    EdgeIndex inserted = candidate;
    if (inserted == kNoCandidate) {
      inserted = src.UniformIndex(dist_.ground_size());
    }
    while (!blocked_.Insert(inserted)) {
      inserted = src.UniformIndex(dist_.ground_size());
    }
    tree_.SetLumpCount(tree_.lump_count() - 1);
    members_.push_back(inserted);
  } else {
    tree_.SetAvailable(choice, false);
    members_.push_back(kLeafTag | choice);
  }
  ++steps_taken_;
}

void ExchangeWalk::Run(std::uint64_t steps, NoiseSource& src) {
  if (members_.empty() || steps == 0) return;
  const std::size_t k = members_.size();
  const std::uint64_t n = dist_.ground_size();
  std::size_t pos = src.UniformIndex(k);
  std::size_t next_pos = steps > 1 ? src.UniformIndex(k) : 0;
  __builtin_prefetch(&members_[next_pos]);
  PrefetchRemoval(pos);
  EdgeIndex candidate = src.UniformIndex(n);
  blocked_.Prefetch(candidate);
  for (std::uint64_t t = 0; t < steps; ++t) {
    StepAt(pos, candidate, src);
    if (t + 1 == steps) break;
    pos = next_pos;
    PrefetchRemoval(pos);
    candidate = src.UniformIndex(n);
    blocked_.Prefetch(candidate);
    if (t + 2 < steps) {
      next_pos = src.UniformIndex(k);
      __builtin_prefetch(&members_[next_pos]);
    }
  }
}

Topology ExchangeWalk::topology() const {
  Topology out;
  out.reserve(members_.size());
  for (std::uint64_t m : members_) out.push_back(MemberIndex(m));
  std::sort(out.begin(), out.end());
  return out;
}

Topology RunWalk(const SparseExpDistribution& dist,
                 std::span<const EdgeIndex> s0, std::uint64_t steps,
                 NoiseSource& src) {
  ExchangeWalk walk(dist, s0);
  walk.Run(steps, src);
  Topology out = walk.topology();
  if (out.size() != dist.k()) {
    throw std::logic_error("exchange walk changed the subset size");
  }
  return out;
}

std::uint64_t Binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    const __uint128_t next =
        static_cast<__uint128_t>(result) * (n - r + i) / i;
    if (next > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = static_cast<std::uint64_t>(next);
  }
  return result;
}

SubsetIndexer::SubsetIndexer(std::uint64_t ground_size, std::uint64_t k)
    : ground_size_(ground_size), k_(k), size_(Binomial(ground_size, k)) {
  if (k > ground_size) throw std::invalid_argument("k exceeds ground size");
}

std::uint64_t SubsetIndexer::Rank(std::span<const EdgeIndex> s) const {
  if (s.size() != k_) throw std::invalid_argument("subset size mismatch");
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= ground_size_ || (i > 0 && s[i] <= s[i - 1])) {
      throw std::invalid_argument("subset must be sorted, unique, in range");
    }
    rank += Binomial(s[i], i + 1);
  }
  return rank;
}

Topology SubsetIndexer::Unrank(std::uint64_t rank) const {
  if (rank >= size_) throw std::invalid_argument("rank out of range");
  Topology s(k_);
  std::uint64_t hi = ground_size_;
  for (std::uint64_t i = k_; i >= 1; --i) {
    // Largest c < hi with C(c, i) <= rank.
    std::uint64_t c = hi - 1;
    while (Binomial(c, i) > rank) --c;
    s[i - 1] = c;
    rank -= Binomial(c, i);
    hi = c;
  }
  return s;
}

std::vector<double> ExactPi(const SparseExpDistribution& dist) {
  const SubsetIndexer indexer(dist.ground_size(), dist.k());
  RequireStates(indexer.size(), kMaxExactPiStates, "ExactPi");
  std::vector<double> log_mass;
  log_mass.reserve(indexer.size());
  std::vector<EdgeIndex> s(dist.k());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
  // Dense weight lookup; N is small whenever C(N,k) is.
  std::vector<double> w(dist.ground_size(), 0.0);
  for (const auto& entry : dist.support()) w[entry.index] = entry.weight;
  do {
    double total = 0;
    for (EdgeIndex e : s) total += w[e];
    log_mass.push_back(dist.eps() * total);
  } while (NextColex(s, dist.ground_size()));
  const double log_z = LogSumExp(log_mass);
  for (double& m : log_mass) m = std::exp(m - log_z);
  return log_mass;
}

std::vector<double> ExactTransitionRow(const SparseExpDistribution& dist,
                                       std::span<const EdgeIndex> s) {
  ValidateSubset(dist, s);
  const SubsetIndexer indexer(dist.ground_size(), dist.k());
  RequireStates(indexer.size(), kMaxTransitionStates, "ExactTransitionRow");
  std::vector<double> row(indexer.size(), 0.0);
  const std::size_t k = s.size();
  if (k == 0) {
    row[0] = 1.0;
    return row;
  }
  std::vector<EdgeIndex> current(s.begin(), s.end());
  std::sort(current.begin(), current.end());
  const std::uint64_t n = dist.ground_size();
  std::vector<double> log_f(n);
  for (EdgeIndex y = 0; y < n; ++y) log_f[y] = dist.eps() * dist.weight(y);

  std::vector<double> candidates;
  for (std::size_t drop = 0; drop < k; ++drop) {
    std::vector<EdgeIndex> rest;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != drop) rest.push_back(current[i]);
    }
    candidates.clear();
    for (EdgeIndex y = 0; y < n; ++y) {
      if (!std::binary_search(rest.begin(), rest.end(), y)) {
        candidates.push_back(log_f[y]);
      }
    }
    const double log_z = LogSumExp(candidates);
    for (EdgeIndex y = 0; y < n; ++y) {
      if (std::binary_search(rest.begin(), rest.end(), y)) continue;
      std::vector<EdgeIndex> next = rest;
      next.insert(std::upper_bound(next.begin(), next.end(), y), y);
      row[indexer.Rank(next)] +=
          std::exp(log_f[y] - log_z) / static_cast<double>(k);
    }
  }
  return row;
}

}  // namespace dpgraph
