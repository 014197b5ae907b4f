// Copyright 2026 The ceglearn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "ceglearn/tree.h"
#include "testing/test_support.h"

namespace ceglearn {
namespace {

std::string Row(int id, std::string_view word, int head, std::string_view rel) {
  return std::to_string(id) + "\t" + std::string(word) + "\t_\tX\tX\t_\t" +
         std::to_string(head) + "\t" + std::string(rel) + "\t_\t_\n";
}

DependencyParseError::Kind KindOf(std::string_view in,
                                  std::optional<std::size_t> count = {}) {
  try {
    ParseDependencies(in, count);
  } catch (const DependencyParseError& e) {
    return e.kind();
  }
  FAIL("expected DependencyParseError");
  return DependencyParseError::Kind::kBadField;
}

TEST_CASE("three rows give three edges with one root") {
  const std::string in = Row(1, "The", 2, "det") + Row(2, "cat", 3, "nsubj") +
                         Row(3, "sat", 0, "root");
  const auto edges = ParseDependencies(in, 3);
  REQUIRE(edges.size() == 3);
  CHECK(edges[0].dependent == 0);
  CHECK(edges[0].head == 1);
  CHECK(edges[0].relation == "det");
  CHECK_FALSE(edges[2].head.has_value());
  std::size_t roots = 0;
  for (const auto& e : edges) roots += !e.head;
  CHECK(roots == 1);
}

TEST_CASE("two root heads are rejected") {
  const std::string in = Row(1, "a", 0, "root") + Row(2, "b", 0, "root");
  CHECK(KindOf(in) == DependencyParseError::Kind::kMultipleRoots);
}

TEST_CASE("empty input gives no edges") {
  CHECK(ParseDependencies("").empty());
  CHECK(ParseDependencies("\n\n").empty());
  CHECK(ParseDependencies("# only a comment\n").empty());
}

TEST_CASE("comments, ranges and empty nodes are skipped") {
  const std::string in = "# sent_id = 1\n" + Row(1, "go", 0, "root") +
                         "2-3\tdon't\t_\t_\t_\t_\t_\t_\t_\t_\n" + Row(2, "do", 1, "aux") +
                         "2.1\tx\t_\tX\tX\t_\t_\t_\t_\t_\n" + Row(3, "n't", 1, "neg");
  CHECK(ParseDependencies(in, 3).size() == 3);
}

TEST_CASE("block ends at the first blank line after data") {
  const std::string in = Row(1, "go", 0, "root") + "\n" + Row(1, "x", 0, "root");
  CHECK(ParseDependencies(in).size() == 1);
}

TEST_CASE("malformed rows") {
  using K = DependencyParseError::Kind;
  CHECK(KindOf("1\tgo\t_\tX\n") == K::kColumnCount);
  CHECK(KindOf("one\tgo\t_\tX\tX\t_\t0\troot\t_\t_\n") == K::kBadField);
  CHECK(KindOf(Row(1, "a", 7, "dep") + Row(2, "b", 0, "root")) == K::kBadField);
  CHECK(KindOf(Row(1, "a", 2, "dep") + Row(1, "b", 0, "root")) ==
        K::kDuplicateDependent);
  CHECK(KindOf(Row(1, "a", 2, "dep") + Row(2, "b", 1, "dep")) == K::kNoRoot);
  CHECK(KindOf(Row(1, "a", 0, "root"), 2) == K::kTokenCount);
}

TEST_CASE("errors carry the line number") {
  const std::string in = "# c\n" + Row(1, "a", 0, "root") + "2\tb\t_\n";
  try {
    ParseDependencies(in);
    FAIL("expected error");
  } catch (const DependencyParseError& e) {
    CHECK(e.line() == 3);
  }
}

}  // namespace
}  // namespace ceglearn
