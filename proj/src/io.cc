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

#include "dpgraph/io.h"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace dpgraph {
namespace {

template <typename T>
T ParseNumber(std::string_view text, std::size_t line, const char* what) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, std::string("malformed ") + what + " '" +
                               std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

// "<key> <value>" header line.
std::uint64_t ParseHeader(std::istream& in, std::size_t& line_no,
                          std::string_view key) {
  std::string line;
  ++line_no;
  if (!std::getline(in, line)) {
    throw ParseError(line_no, "missing '" + std::string(key) + "' header");
  }
  std::string_view view(line);
  if (view.size() < key.size() + 2 || view.substr(0, key.size()) != key ||
      view[key.size()] != ' ') {
    throw ParseError(line_no, "expected '" + std::string(key) + " <value>'");
  }
  return ParseNumber<std::uint64_t>(view.substr(key.size() + 1), line_no,
                                    "header value");
}

struct Triple {
  Vertex u;
  Vertex v;
  double w;
};

Triple ParseTriple(std::string_view line, std::size_t line_no, Vertex n) {
  const auto fields = SplitTabs(line);
  if (fields.size() != 3) {
    throw ParseError(line_no, "expected 'u<TAB>v<TAB>w'");
  }
  const auto u = ParseNumber<std::int64_t>(fields[0], line_no, "vertex");
  const auto v = ParseNumber<std::int64_t>(fields[1], line_no, "vertex");
  const auto w = ParseNumber<double>(fields[2], line_no, "weight");
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw ParseError(line_no, "vertex outside [0, n)");
  }
  if (u >= v) throw ParseError(line_no, "edges must satisfy u < v");
  if (!std::isfinite(w)) throw ParseError(line_no, "weight must be finite");
  return {static_cast<Vertex>(u), static_cast<Vertex>(v), w};
}

Vertex CheckedVertexCount(std::uint64_t n, std::size_t line_no) {
  if (n < 1 || n > static_cast<std::uint64_t>(INT32_MAX)) {
    throw ParseError(line_no, "vertex count out of range");
  }
  return static_cast<Vertex>(n);
}

}  // namespace

std::string FormatWeight(double w) {
  std::array<char, 64> buffer;
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), w);
  return std::string(buffer.data(), ptr);
}

WeightedGraph ReadGraph(std::istream& in) {
  std::size_t line_no = 0;
  const std::uint64_t header = ParseHeader(in, line_no, "n");
  const Vertex n = CheckedVertexCount(header, line_no);
  std::vector<WeightedGraph::Entry> entries;
  std::string line;
  bool have_previous = false;
  EdgeIndex previous = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Triple t = ParseTriple(line, line_no, n);
    if (!(t.w > 0)) throw ParseError(line_no, "edge weight must be positive");
    const EdgeIndex e = EdgeIndexOf(t.u, t.v, n);
    if (have_previous && e <= previous) {
      throw ParseError(line_no, "edges must be strictly ascending by index");
    }
    have_previous = true;
    previous = e;
    entries.push_back({e, t.w});
  }
  return WeightedGraph::FromEntries(n, std::move(entries));
}

void WriteGraph(std::ostream& out, const WeightedGraph& g) {
  out << "n " << g.n() << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << '\t' << e.v << '\t' << FormatWeight(e.weight) << '\n';
  }
}

StreamSpec ReadStream(std::istream& in) {
  std::size_t line_no = 0;
  StreamSpec stream;
  const std::uint64_t header = ParseHeader(in, line_no, "n");
  stream.n = CheckedVertexCount(header, line_no);
  stream.rounds = ParseHeader(in, line_no, "T");
  if (stream.rounds < 1) throw ParseError(line_no, "T must be >= 1");
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const Triple t = ParseTriple(line, line_no, stream.n);
    if (t.w < 0) throw ParseError(line_no, "update weight must be >= 0");
    if (stream.updates.size() == stream.rounds) {
      throw ParseError(line_no, "more updates than declared rounds");
    }
    stream.updates.push_back({EdgeIndexOf(t.u, t.v, stream.n), t.w});
  }
  return stream;
}

void WriteStream(std::ostream& out, const StreamSpec& stream) {
  out << "n " << stream.n << '\n' << "T " << stream.rounds << '\n';
  for (const StreamUpdate& u : stream.updates) {
    auto [a, b] = EdgeEndpoints(u.edge, stream.n);
    out << a << '\t' << b << '\t' << FormatWeight(u.weight) << '\n';
  }
}

WeightedGraph ReadGraphFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ReadGraph(in);
}

StreamSpec ReadStreamFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return ReadStream(in);
}

void WriteFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& write) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    try {
      write(out);
    } catch (...) {
      out.close();
      std::filesystem::remove(tmp);
      throw;
    }
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace dpgraph
