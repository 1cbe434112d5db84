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

#ifndef DPGRAPH_GRAPH_H_
#define DPGRAPH_GRAPH_H_

#include <cstdint>
#include <initializer_list>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

namespace dpgraph {

using Vertex = std::int32_t;

// Rank of an unordered vertex pair in the row-major upper triangle:
// (0,1), (0,2), ..., (0,n-1), (1,2), ...
using EdgeIndex = std::uint64_t;

// Number of canonical edge slots, C(n, 2).
std::uint64_t NumSlots(Vertex n);

// Throws std::invalid_argument when u == v or either endpoint is outside
// [0, n). Symmetric in (u, v).
EdgeIndex EdgeIndexOf(Vertex u, Vertex v, Vertex n);

// Inverse of EdgeIndexOf; returns (u, v) with u < v.
std::pair<Vertex, Vertex> EdgeEndpoints(EdgeIndex e, Vertex n);

struct Edge {
  EdgeIndex index;
  Vertex u;
  Vertex v;
  double weight;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// An (epsilon, delta) pair. Construction validates eps > 0 and
// 0 < delta < 1.
class PrivacyBudget {
 public:
  PrivacyBudget(double eps, double delta);

  double eps() const { return eps_; }
  double delta() const { return delta_; }

 private:
  double eps_;
  double delta_;
};

// Sparse non-negative weight vector over the C(n,2) vertex pairs. Only
// strictly positive weights are stored, sorted by edge index. Immutable
// once built.
class WeightedGraph {
 public:
  struct Entry {
    EdgeIndex index;
    double weight;
  };

  explicit WeightedGraph(Vertex n = 1);

  // Sorts the entries, sums duplicate indices and drops every entry whose
  // resulting weight is not strictly positive. Throws std::invalid_argument
  // for an index >= C(n,2) or a non-finite weight.
  static WeightedGraph FromEntries(Vertex n, std::vector<Entry> entries);

  // Convenience for tests and generators: (u, v, w) triples.
  static WeightedGraph FromTriples(
      Vertex n, std::initializer_list<std::tuple<Vertex, Vertex, double>> t);

  Vertex n() const { return n_; }
  std::uint64_t num_slots() const { return NumSlots(n_); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // Ascending by edge index.
  std::span<const Edge> edges() const { return edges_; }

  // 0 when the pair is absent.
  double weight(EdgeIndex e) const;
  double weight(Vertex u, Vertex v) const {
    return weight(EdgeIndexOf(u, v, n_));
  }

  double total_weight() const;

  // Unweighted degrees (number of incident stored edges).
  std::vector<std::int64_t> degrees() const;
  std::int64_t max_degree() const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Vertex n_;
  std::vector<Edge> edges_;
};

// Subset of [0, n) with O(1) membership.
class VertexSet {
 public:
  explicit VertexSet(Vertex n) : member_(static_cast<std::size_t>(n), 0) {}
  // Throws std::invalid_argument on out-of-range or duplicate vertices.
  VertexSet(Vertex n, std::initializer_list<Vertex> vertices);
  VertexSet(Vertex n, std::span<const Vertex> vertices);

  static VertexSet FromMask(Vertex n, std::uint64_t mask);

  Vertex n() const { return static_cast<Vertex>(member_.size()); }
  bool contains(Vertex v) const { return member_[v] != 0; }
  void insert(Vertex v);
  void erase(Vertex v) { member_[v] = 0; }
  std::size_t size() const;
  std::vector<Vertex> members() const;

  VertexSet Union(const VertexSet& other) const;
  bool Intersects(const VertexSet& other) const;

 private:
  std::vector<std::uint8_t> member_;
};

// Phi_G(S, V \ S).
double CutValue(const WeightedGraph& g, const VertexSet& s);

// Phi_G(S, T); throws std::invalid_argument if S and T overlap.
double CutValue(const WeightedGraph& g, const VertexSet& s,
                const VertexSet& t);

// x^T L_G x.
double LaplacianQuadratic(const WeightedGraph& g, std::span<const double> x);

double L1Distance(const WeightedGraph& g, const WeightedGraph& h);

// max over q in [0,1]^N of |q^T (G - H)|, which is attained by the
// indicator of the positive (or the negative) part of G - H.
double EvalLinearWorst(const WeightedGraph& g, const WeightedGraph& h);

// Visits the union of both supports in ascending index order, calling
// fn(edge, weight_in_g, weight_in_h).
template <typename Fn>
void ForEachUnion(const WeightedGraph& g, const WeightedGraph& h, Fn&& fn) {
  auto a = g.edges();
  auto b = h.edges();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      fn(a[i], a[i].weight, 0.0);
      ++i;
    } else if (i == a.size() || b[j].index < a[i].index) {
      fn(b[j], 0.0, b[j].weight);
      ++j;
    } else {
      fn(a[i], a[i].weight, b[j].weight);
      ++i;
      ++j;
    }
  }
}

}  // namespace dpgraph

#endif  // DPGRAPH_GRAPH_H_
