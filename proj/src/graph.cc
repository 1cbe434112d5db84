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

#include "dpgraph/graph.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dpgraph {
namespace {

// First edge index of row u.
std::uint64_t RowStart(std::uint64_t u, std::uint64_t n) {
  return u * n - u * (u + 1) / 2;
}

void RequireSameOrder(const WeightedGraph& g, const WeightedGraph& h) {
  if (g.n() != h.n()) {
    throw std::invalid_argument("graphs have different vertex counts: " +
                                std::to_string(g.n()) + " vs " +
                                std::to_string(h.n()));
  }
}

}  // namespace

std::uint64_t NumSlots(Vertex n) {
  const auto m = static_cast<std::uint64_t>(n);
  return m * (m - 1) / 2;
}

EdgeIndex EdgeIndexOf(Vertex u, Vertex v, Vertex n) {
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw std::invalid_argument("vertex out of range for n=" +
                                std::to_string(n));
  }
  if (u == v) throw std::invalid_argument("self-loops have no edge index");
  if (u > v) std::swap(u, v);
  return RowStart(u, n) + static_cast<std::uint64_t>(v - u - 1);
}

std::pair<Vertex, Vertex> EdgeEndpoints(EdgeIndex e, Vertex n) {
  const auto m = static_cast<std::uint64_t>(n);
  if (e >= NumSlots(n)) {
    throw std::invalid_argument("edge index " + std::to_string(e) +
                                " out of range for n=" + std::to_string(n));
  }
  // Largest u with RowStart(u) <= e, seeded from the quadratic's root and
  // corrected for rounding.
  const double b = 2.0 * static_cast<double>(m) - 1.0;
  double est = (b - std::sqrt(b * b - 8.0 * static_cast<double>(e))) / 2.0;
  auto u = static_cast<std::uint64_t>(std::max(0.0, std::floor(est)));
  if (u > m - 2) u = m - 2;
  while (u > 0 && RowStart(u, m) > e) --u;
  while (u + 1 <= m - 2 && RowStart(u + 1, m) <= e) ++u;
  const std::uint64_t v = e - RowStart(u, m) + u + 1;
  return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

PrivacyBudget::PrivacyBudget(double eps, double delta)
    : eps_(eps), delta_(delta) {
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw std::invalid_argument("eps must be positive and finite");
  }
  if (!(delta > 0 && delta < 1)) {
    throw std::invalid_argument("delta must lie in (0, 1)");
  }
}

WeightedGraph::WeightedGraph(Vertex n) : n_(n) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
}

WeightedGraph WeightedGraph::FromEntries(Vertex n, std::vector<Entry> entries) {
  WeightedGraph g(n);
  const std::uint64_t slots = NumSlots(n);
  for (const Entry& entry : entries) {
    if (entry.index >= slots) {
      throw std::invalid_argument("edge index " + std::to_string(entry.index) +
                                  " out of range for n=" + std::to_string(n));
    }
    if (!std::isfinite(entry.weight)) {
      throw std::invalid_argument("edge weight must be finite");
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.index < b.index; });
  g.edges_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size();) {
    const EdgeIndex index = entries[i].index;
    double w = 0;
    for (; i < entries.size() && entries[i].index == index; ++i) {
      w += entries[i].weight;
    }
    if (w > 0) {
      auto [u, v] = EdgeEndpoints(index, n);
      g.edges_.push_back(Edge{index, u, v, w});
    }
  }
  return g;
}

WeightedGraph WeightedGraph::FromTriples(
    Vertex n, std::initializer_list<std::tuple<Vertex, Vertex, double>> t) {
  std::vector<Entry> entries;
  entries.reserve(t.size());
  for (const auto& [u, v, w] : t) {
    entries.push_back({EdgeIndexOf(u, v, n), w});
  }
  return FromEntries(n, std::move(entries));
}

double WeightedGraph::weight(EdgeIndex e) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const Edge& edge, EdgeIndex index) { return edge.index < index; });
  return it != edges_.end() && it->index == e ? it->weight : 0.0;
}

double WeightedGraph::total_weight() const {
  double total = 0;
  for (const Edge& e : edges_) total += e.weight;
  return total;
}

std::vector<std::int64_t> WeightedGraph::degrees() const {
  std::vector<std::int64_t> deg(static_cast<std::size_t>(n_), 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

std::int64_t WeightedGraph::max_degree() const {
  auto deg = degrees();
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

VertexSet::VertexSet(Vertex n, std::initializer_list<Vertex> vertices)
    : VertexSet(n, std::span<const Vertex>(vertices.begin(), vertices.size())) {}

VertexSet::VertexSet(Vertex n, std::span<const Vertex> vertices)
    : member_(static_cast<std::size_t>(n), 0) {
  for (Vertex v : vertices) {
    if (v < 0 || v >= n) {
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " outside [0, " + std::to_string(n) + ")");
    }
    if (member_[v]) {
      throw std::invalid_argument("duplicate vertex " + std::to_string(v));
    }
    member_[v] = 1;
  }
}

VertexSet VertexSet::FromMask(Vertex n, std::uint64_t mask) {
  VertexSet s(n);
  for (Vertex v = 0; v < n && v < 64; ++v) {
    if (mask >> v & 1) s.member_[v] = 1;
  }
  return s;
}

void VertexSet::insert(Vertex v) {
  if (v < 0 || v >= n()) throw std::invalid_argument("vertex out of range");
  member_[v] = 1;
}

std::size_t VertexSet::size() const {
  return static_cast<std::size_t>(
      std::count(member_.begin(), member_.end(), std::uint8_t{1}));
}

std::vector<Vertex> VertexSet::members() const {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n(); ++v) {
    if (member_[v]) out.push_back(v);
  }
  return out;
}

VertexSet VertexSet::Union(const VertexSet& other) const {
  if (other.n() != n()) throw std::invalid_argument("vertex sets differ in n");
  VertexSet out(n());
  for (std::size_t i = 0; i < member_.size(); ++i) {
    out.member_[i] = member_[i] | other.member_[i];
  }
  return out;
}

bool VertexSet::Intersects(const VertexSet& other) const {
  if (other.n() != n()) throw std::invalid_argument("vertex sets differ in n");
  for (std::size_t i = 0; i < member_.size(); ++i) {
    if (member_[i] && other.member_[i]) return true;
  }
  return false;
}

double CutValue(const WeightedGraph& g, const VertexSet& s) {
  if (s.n() != g.n()) throw std::invalid_argument("vertex set size mismatch");
  double cut = 0;
  for (const Edge& e : g.edges()) {
    if (s.contains(e.u) != s.contains(e.v)) cut += e.weight;
  }
  return cut;
}

double CutValue(const WeightedGraph& g, const VertexSet& s,
                const VertexSet& t) {
  if (s.n() != g.n() || t.n() != g.n()) {
    throw std::invalid_argument("vertex set size mismatch");
  }
  if (s.Intersects(t)) throw std::invalid_argument("S and T must be disjoint");
  double cut = 0;
  for (const Edge& e : g.edges()) {
    if ((s.contains(e.u) && t.contains(e.v)) ||
        (t.contains(e.u) && s.contains(e.v))) {
      cut += e.weight;
    }
  }
  return cut;
}

double LaplacianQuadratic(const WeightedGraph& g, std::span<const double> x) {
  if (x.size() != static_cast<std::size_t>(g.n())) {
    throw std::invalid_argument("vector length does not match vertex count");
  }
  double total = 0;
  for (const Edge& e : g.edges()) {
    const double d = x[e.u] - x[e.v];
    total += e.weight * d * d;
  }
  return total;
}

double L1Distance(const WeightedGraph& g, const WeightedGraph& h) {
  RequireSameOrder(g, h);
  double total = 0;
  ForEachUnion(g, h, [&](const Edge&, double a, double b) {
    total += std::abs(a - b);
  });
  return total;
}

double EvalLinearWorst(const WeightedGraph& g, const WeightedGraph& h) {
  RequireSameOrder(g, h);
  double positive = 0, negative = 0;
  ForEachUnion(g, h, [&](const Edge&, double a, double b) {
    const double d = a - b;
    if (d > 0) {
      positive += d;
    } else {
      negative -= d;
    }
  });
  return std::max(positive, negative);
}

}  // namespace dpgraph
