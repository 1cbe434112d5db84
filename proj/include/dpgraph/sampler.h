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

// Sparse exponential-mechanism sampler over k-subsets of a ground set [N].
//
// The target law is pi[S] ~ prod_{e in S} exp(eps * w_e) for |S| = k, which
// equals exp(-eps * ||x - x|S||_1) up to a factor independent of S. Indices
// outside the weight support all carry mass exp(0) = 1 and are never
// materialized: the walk keeps them behind a single aggregate leaf and draws
// a concrete index by rejection only when that leaf is chosen, so memory is
// O(support + k) even when N = C(n, 2) is huge.

#ifndef DPGRAPH_SAMPLER_H_
#define DPGRAPH_SAMPLER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dpgraph/graph.h"
#include "dpgraph/random.h"
#include "dpgraph/weight_tree.h"

namespace dpgraph {

// A k-subset of [N], sorted ascending.
using Topology = std::vector<EdgeIndex>;

class SparseExpDistribution {
 public:
  struct Weight {
    EdgeIndex index;
    double weight;
  };

  // Throws std::invalid_argument unless k <= N, eps >= 0, every weight is
  // finite and >= 0, and indices are in [0, N) without duplicates. Explicit
  // zero weights are folded into the implicit zero set.
  SparseExpDistribution(std::uint64_t ground_size, std::uint64_t k, double eps,
                        std::vector<Weight> weights);

  static SparseExpDistribution FromGraph(const WeightedGraph& g,
                                         std::uint64_t k, double eps);

  std::uint64_t ground_size() const { return ground_size_; }
  std::uint64_t k() const { return k_; }
  double eps() const { return eps_; }
  // Strictly positive weights, ascending by index.
  std::span<const Weight> support() const { return support_; }

  double weight(EdgeIndex e) const;
  // Position of e in support(), if present.
  std::optional<std::size_t> SupportPosition(EdgeIndex e) const;

 private:
  std::uint64_t ground_size_;
  std::uint64_t k_;
  double eps_;
  std::vector<Weight> support_;
};

// eps * sum_{e in S} w_e. Throws std::invalid_argument if S is not a
// k-subset of [N].
double LogMass(const SparseExpDistribution& dist, std::span<const EdgeIndex> s);

// The same quantity through the l1 form eps*||x||_1 - eps*||x - x|S||_1.
double LogMassL1Form(const SparseExpDistribution& dist,
                     std::span<const EdgeIndex> s);

// Walk length
//   ceil(multiplier * k * (ln(k ln max(N,3) + 2)
//                          + 2 ln((e^{2 eps} + 1) / delta) + ln 4)).
// The first term bounds ln ln(1/pi(S0)) through pi(S0) >= 1/C(N,k) >= N^-k.
std::uint64_t MixingSteps(std::uint64_t k, std::uint64_t ground_size,
                          double eps, double delta, double multiplier = 1.0);

// Basis-exchange walk: each step removes a uniform element of the current set
// and inserts y from the complement with probability ~ exp(eps * w_y). The
// removed element may be re-inserted.
class ExchangeWalk {
 public:
  // Throws std::invalid_argument unless initial is a k-subset of [N]. dist
  // must outlive the walk.
  ExchangeWalk(const SparseExpDistribution& dist,
               std::span<const EdgeIndex> initial);

  void Step(NoiseSource& src);
  // Same transition law as repeated Step calls, but draws removal positions
  // and lump candidates a step ahead so their memory can be prefetched; the
  // stream is consumed in a different order.
  void Run(std::uint64_t steps, NoiseSource& src);

  Topology topology() const;
  std::uint64_t steps_taken() const { return steps_taken_; }
  std::size_t size() const { return members_.size(); }
  const WeightTree& tree() const { return tree_; }

 private:
  const SparseExpDistribution& dist_;
  WeightTree tree_;
  // A member is either a support leaf (tagged with kLeafTag) or a raw
  // zero-weight index. Indices stay below 2^63 since N <= C(2^31, 2).
  static constexpr std::uint64_t kLeafTag = std::uint64_t{1} << 63;
  EdgeIndex MemberIndex(std::uint64_t m) const {
    return (m & kLeafTag) ? dist_.support()[m & ~kLeafTag].index : m;
  }

  // Open addressing with linear probing and backward-shift deletion. The
  // capacity is fixed at construction, so the walk never rehashes.
  class IndexSet {
   public:
    explicit IndexSet(std::size_t max_size = 0);
    // False if already present.
    bool Insert(EdgeIndex e);
    // e must be present.
    void Erase(EdgeIndex e);
    bool Contains(EdgeIndex e) const;
    void Prefetch(EdgeIndex e) const {
      __builtin_prefetch(&slots_[Home(e)], 1);
    }

   private:
    static constexpr EdgeIndex kEmpty = ~EdgeIndex{0};
    std::size_t Home(EdgeIndex e) const {
      return static_cast<std::size_t>((e * 0x9E3779B97F4A7C15ull) >> shift_);
    }
    std::vector<EdgeIndex> slots_;
    std::size_t mask_ = 0;
    int shift_ = 64;
  };

  static constexpr EdgeIndex kNoCandidate = ~EdgeIndex{0};
  // One step with the removal position already drawn. candidate, unless
  // kNoCandidate, is a uniform draw from [N] to try first if the lump wins.
  void StepAt(std::size_t pos, EdgeIndex candidate, NoiseSource& src);
  void PrefetchRemoval(std::size_t pos) const {
    if ((members_[pos] & kLeafTag) == 0) blocked_.Prefetch(members_[pos]);
  }

  std::vector<std::uint64_t> members_;
  // Support indices plus zero-weight members: exactly the indices the lump
  // must reject.
  IndexSet blocked_;
  std::uint64_t steps_taken_ = 0;
};

// T steps of the walk from s0. Verifies the result still has k elements.
Topology RunWalk(const SparseExpDistribution& dist,
                 std::span<const EdgeIndex> s0, std::uint64_t steps,
                 NoiseSource& src);

// Colex ranking of k-subsets of [N].
class SubsetIndexer {
 public:
  SubsetIndexer(std::uint64_t ground_size, std::uint64_t k);

  std::uint64_t size() const { return size_; }
  std::uint64_t Rank(std::span<const EdgeIndex> sorted_subset) const;
  Topology Unrank(std::uint64_t rank) const;

 private:
  std::uint64_t ground_size_;
  std::uint64_t k_;
  std::uint64_t size_;
};

// Saturates at UINT64_MAX.
std::uint64_t Binomial(std::uint64_t n, std::uint64_t r);

inline constexpr std::uint64_t kMaxExactPiStates = 1'000'000;
inline constexpr std::uint64_t kMaxTransitionStates = 10'000;

// Exact normalized pi indexed by SubsetIndexer rank. Throws std::length_error
// when C(N,k) exceeds kMaxExactPiStates.
std::vector<double> ExactPi(const SparseExpDistribution& dist);

// Exact one-step law of ExchangeWalk::Step from s, indexed by rank. Throws
// std::length_error when C(N,k) exceeds kMaxTransitionStates.
std::vector<double> ExactTransitionRow(const SparseExpDistribution& dist,
                                       std::span<const EdgeIndex> s);

}  // namespace dpgraph

#endif  // DPGRAPH_SAMPLER_H_
