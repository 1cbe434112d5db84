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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.h"

namespace dpgraph {
namespace {

WeightedGraph Parse(const std::string& text) {
  std::istringstream in(text);
  return ReadGraph(in);
}

std::size_t ErrorLine(const std::string& text) {
  try {
    Parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(GraphFormat, ParsesValidFile) {
  const auto g = Parse("n 4\n0\t1\t2.5\n2\t3\t1\n");
  EXPECT_EQ(g, WeightedGraph::FromTriples(4, {{0, 1, 2.5}, {2, 3, 1}}));
  EXPECT_TRUE(Parse("n 100\n").empty());
}

TEST(GraphFormat, ReportsLineNumbers) {
  EXPECT_EQ(ErrorLine(""), 1u);
  EXPECT_EQ(ErrorLine("m 4\n"), 1u);
  EXPECT_EQ(ErrorLine("n 0\n"), 1u);
  EXPECT_EQ(ErrorLine("n 4\n0\t1\t1\n1\t0\t1\n"), 3u);   // u > v
  EXPECT_EQ(ErrorLine("n 4\n0\t1\t0\n"), 2u);            // weight not positive
  EXPECT_EQ(ErrorLine("n 4\n0\t1\t-1\n"), 2u);
  EXPECT_EQ(ErrorLine("n 4\n0\t4\t1\n"), 2u);            // out of range
  EXPECT_EQ(ErrorLine("n 4\n1\t2\t1\n0\t1\t1\n"), 3u);   // not ascending
  EXPECT_EQ(ErrorLine("n 4\n0\t1\t1\n0\t1\t1\n"), 3u);   // duplicate
  EXPECT_EQ(ErrorLine("n 4\n0\t1\tabc\n"), 2u);
  EXPECT_EQ(ErrorLine("n 4\n0\t1\n"), 2u);
  EXPECT_EQ(ErrorLine("n 4\n0\t1\t1\textra\n"), 2u);
}

TEST(GraphFormat, RoundTripIsExact) {
  NoiseSource src = NoiseSource::Seeded(1);
  const auto g = testing::RandomGraph(30, 0.3, src, 0.001, 1e6);
  std::ostringstream out;
  WriteGraph(out, g);
  EXPECT_EQ(Parse(out.str()), g);
  std::ostringstream again;
  WriteGraph(again, Parse(out.str()));
  EXPECT_EQ(again.str(), out.str());
}

TEST(StreamFormat, RoundTripAndErrors) {
  StreamSpec s{5, 4, {{0, 1.0}, {9, 0.0}, {3, 2.5}}};
  std::ostringstream out;
  WriteStream(out, s);
  std::istringstream in(out.str());
  const StreamSpec back = ReadStream(in);
  EXPECT_EQ(back.n, 5);
  EXPECT_EQ(back.rounds, 4u);
  ASSERT_EQ(back.updates.size(), 3u);
  EXPECT_EQ(back.updates[1].edge, 9u);
  EXPECT_EQ(back.updates[2].weight, 2.5);

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream bad(text);
    try {
      ReadStream(bad);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("n 3\nT 1\n0\t1\t1\n0\t2\t1\n"), 4u);  // more updates than T
  EXPECT_EQ(line_of("n 3\n"), 2u);
  EXPECT_EQ(line_of("n 3\nT 2\n0\t1\t-1\n"), 3u);
}

TEST(AtomicWrite, NoPartialFileOnError) {
  const auto dir = std::filesystem::temp_directory_path() / "dpgraph_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.tsv";
  std::filesystem::remove(path);
  EXPECT_THROW(WriteFileAtomically(path,
                                   [](std::ostream& out) {
                                     out << "n 3\n";
                                     throw std::runtime_error("boom");
                                   }),
               std::runtime_error);
  EXPECT_FALSE(std::filesystem::exists(path));
  WriteFileAtomically(path, [](std::ostream& out) { out << "n 3\n"; });
  EXPECT_EQ(ReadGraphFile(path), WeightedGraph(3));
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().filename(), "out.tsv");
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace dpgraph
