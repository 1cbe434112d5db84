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

// Text formats.
//
// Graph:  "n <count>" then one "u\tv\tw" line per edge, 0 <= u < v < n,
//         w > 0, lines strictly ascending by edge index, LF endings.
// Stream: "n <count>", "T <rounds>", then one "u\tv\tw" line per round
//         with w >= 0.

#ifndef DPGRAPH_IO_H_
#define DPGRAPH_IO_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpgraph/continual.h"
#include "dpgraph/graph.h"

namespace dpgraph {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

WeightedGraph ReadGraph(std::istream& in);
void WriteGraph(std::ostream& out, const WeightedGraph& g);

// Shortest decimal that round-trips to the same double.
std::string FormatWeight(double w);

struct StreamSpec {
  Vertex n = 1;
  std::uint64_t rounds = 0;
  std::vector<StreamUpdate> updates;
};

StreamSpec ReadStream(std::istream& in);
void WriteStream(std::ostream& out, const StreamSpec& stream);

WeightedGraph ReadGraphFile(const std::filesystem::path& path);
StreamSpec ReadStreamFile(const std::filesystem::path& path);

// Writes through a sibling temporary file and renames it into place, so the
// destination never holds a partial file.
void WriteFileAtomically(const std::filesystem::path& path,
                         const std::function<void(std::ostream&)>& write);

}  // namespace dpgraph

#endif  // DPGRAPH_IO_H_
