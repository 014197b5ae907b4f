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

#include <random>

#include <doctest.h>

#include "ceglearn/signature.h"
#include "testing/test_support.h"

namespace ceglearn {
namespace {

using testing::Parse;

Signature RootWithSbar() {
  Signature sig;
  sig.AddNode({0}, "SBAR");
  return sig;
}

TEST_CASE("SBAR as first child") {
  CHECK(IsCompliant(RootWithSbar(), Parse(testing::kIfDoor)));
  CHECK_FALSE(IsCompliant(RootWithSbar(), Parse(testing::kPlain)));
  CHECK_FALSE(IsCompliant(RootWithSbar(), Parse(testing::kTrailingIf)));
}

TEST_CASE("root-only signature is compliant with every sentence") {
  const Signature root;
  CHECK(root.nodes().size() == 1);
  CHECK(root.specificity() == 1);
  for (auto ptb : {testing::kIfDoor, testing::kPlain, testing::kMultiWord}) {
    CHECK(IsCompliant(root, Parse(ptb)));
  }
}

TEST_CASE("keyword constraint is case-insensitive and transitive") {
  Signature sig;
  sig.AddConstraint({{}, "IF"});
  CHECK(sig.constraints().front().keyword == "if");
  CHECK(IsCompliant(sig, Parse(testing::kIfDoor)));      // "If", deep below root
  CHECK(IsCompliant(sig, Parse(testing::kTrailingIf)));  // "if"
  CHECK_FALSE(IsCompliant(sig, Parse(testing::kPlain)));
}

TEST_CASE("keyword constraint is scoped to its node") {
  Signature sig;
  sig.AddNode({1}, "VP");
  sig.AddConstraint({{1}, "if"});
  CHECK(IsCompliant(sig, Parse(testing::kTrailingIf)));
  Signature front;
  front.AddNode({1}, ",");
  front.AddConstraint({{1}, "if"});
  CHECK_FALSE(IsCompliant(front, Parse(testing::kIfDoor)));
}

TEST_CASE("keywords match whole tokens") {
  Signature sig;
  sig.AddConstraint({{}, "ala"});
  CHECK_FALSE(IsCompliant(sig, Parse(testing::kPlain)));
}

TEST_CASE("labels compare case-sensitively") {
  Signature sig;
  sig.AddNode({0}, "sbar");
  CHECK_FALSE(IsCompliant(sig, Parse(testing::kIfDoor)));
}

TEST_CASE("signature invariants") {
  Signature sig;
  CHECK_THROWS_AS(sig.AddNode({0, 1}, "NP"), std::invalid_argument);
  CHECK_THROWS_AS(sig.AddNode({}, "S"), std::invalid_argument);
  sig.AddNode({0}, "SBAR");
  CHECK_THROWS_AS(sig.AddNode({0}, "NP"), std::invalid_argument);
  CHECK_THROWS_AS(sig.AddConstraint({{3}, "if"}), std::invalid_argument);
  sig.AddConstraint({{0}, "if"});
  CHECK_THROWS_AS(sig.AddConstraint({{0}, "If"}), std::invalid_argument);
  CHECK_THROWS_AS(Signature::FromParts({{TreePath{}, "NP"}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Signature::FromParts({{TreePath{}, "S"}, {TreePath{1, 0}, "X"}}, {}),
                  std::invalid_argument);
  const Signature rebuilt = Signature::FromParts(sig.nodes(), sig.constraints());
  CHECK(rebuilt == sig);
  CHECK(rebuilt.specificity() == 3);
}

TEST_CASE("compliance agrees with the enumeration oracle") {
  std::mt19937_64 rng(20261015);
  std::size_t agree = 0, positives = 0;
  constexpr std::size_t kCases = 2000;
  for (std::size_t i = 0; i < kCases; ++i) {
    const ParsedSentence tree = Parse(testing::RandomTree(rng, 15));
    // Half the signatures come from the tree itself, half from another one.
    const ParsedSentence source =
        i % 2 ? tree : Parse(testing::RandomTree(rng, 15));
    const Signature sig = testing::RandomSignature(rng, source, 5);
    REQUIRE(sig.nodes().size() <= 5);
    const bool fast = IsCompliant(sig, tree);
    agree += fast == testing::OracleCompliant(sig, tree);
    positives += fast;
  }
  CHECK(agree == kCases);
  // Both outcomes must be well represented.
  CHECK(positives > kCases / 10);
  CHECK(positives < kCases * 9 / 10);
}

TEST_CASE("removing a leaf node or a constraint never loses compliance") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    const ParsedSentence tree = Parse(testing::RandomTree(rng, 15));
    const Signature sig = testing::RandomSignature(rng, tree, 5);
    if (!IsCompliant(sig, tree)) continue;
    for (std::size_t c = 0; c < sig.constraints().size(); ++c) {
      auto constraints = sig.constraints();
      constraints.erase(constraints.begin() + static_cast<long>(c));
      CHECK(IsCompliant(Signature::FromParts(sig.nodes(), constraints), tree));
    }
    for (const auto& [path, label] : sig.nodes()) {
      if (path.is_root()) continue;
      bool has_child = false;
      for (const auto& [other, l] : sig.nodes()) {
        has_child = has_child || (other != path && path.is_prefix_of(other));
      }
      bool constrained = false;
      for (const auto& c : sig.constraints()) constrained = constrained || c.path == path;
      if (has_child || constrained) continue;
      auto nodes = sig.nodes();
      nodes.erase(path);
      CHECK(IsCompliant(Signature::FromParts(nodes, sig.constraints()), tree));
    }
  }
}

TEST_CASE("adding elements never gains compliance") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const ParsedSentence tree = Parse(testing::RandomTree(rng, 15));
    Signature sig = testing::RandomSignature(rng, Parse(testing::RandomTree(rng, 15)), 4);
    const bool before = IsCompliant(sig, tree);
    const auto& [path, label] = *sig.nodes().rbegin();
    Signature grown = sig;
    if (!grown.has_node(path.child(0))) grown.AddNode(path.child(0), "NP");
    if (!before) CHECK_FALSE(IsCompliant(grown, tree));
  }
}

}  // namespace
}  // namespace ceglearn
