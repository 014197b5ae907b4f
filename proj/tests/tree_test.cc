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

#include "ceglearn/corpus.h"
#include "ceglearn/tree.h"
#include "testing/test_support.h"

namespace ceglearn {
namespace {

using testing::Parse;

TEST_CASE("bracketed tree with three tokens") {
  const ParsedSentence s = Parse("(S (NP (DT The) (NN cat)) (VP (VBD sat)))");
  REQUIRE(s.tokens.size() == 3);
  CHECK(s.tokens[0].text == "The");
  CHECK(s.tokens[1].text == "cat");
  CHECK(s.tokens[2].text == "sat");
  CHECK(s.tokens[2].pos == "VBD");
  CHECK(s.tree.label == "S");
  CHECK(s.tree.children.size() == 2);
  CHECK(s.text == "The cat sat");
  CHECK(s.tree.span == TokenSpan{0, 3});
}

TEST_CASE("fronted conditional has SBAR as first child") {
  const ParsedSentence s = Parse(testing::kIfDoor);
  CHECK(s.tree.children.at(0).label == "SBAR");
  CHECK(s.text == "If the door opens, the alarm sounds.");
}

TEST_CASE("malformed bracketings") {
  auto kind_of = [](std::string_view in) {
    try {
      ParseBracketedTree(in);
    } catch (const TreeParseError& e) {
      return e.kind();
    }
    FAIL("expected TreeParseError for " << in);
    return TreeParseError::Kind::kEmptyInput;
  };
  using K = TreeParseError::Kind;
  CHECK(kind_of("(S (NP (DT The)") == K::kUnbalanced);
  CHECK(kind_of("(S (NP (DT The)))) ") == K::kUnbalanced);
  CHECK(kind_of("") == K::kEmptyInput);
  CHECK(kind_of("   ") == K::kEmptyInput);
  CHECK(kind_of("(S (NP (DT The)) (VP (VB go))) (S (X y))") == K::kTrailingInput);
  CHECK(kind_of("(NP (DT The) (NN cat))") == K::kRootNotS);
  CHECK(kind_of("(S (NP (DT The) cat))") == K::kMixedChildren);
  CHECK(kind_of("(S (NP (DT)))") == K::kLeafWithoutWord);
  CHECK(kind_of("(S ( (DT x)))") == K::kEmptyLabel);
}

TEST_CASE("parse errors report a byte offset") {
  try {
    ParseBracketedTree("(S (NP (DT The)) (VP (VB go))) extra");
    FAIL("expected error");
  } catch (const TreeParseError& e) {
    CHECK(e.offset() == 31);
    CHECK(std::string(e.what()).find("byte offset 31") != std::string::npos);
  }
}

TEST_CASE("multi-word leaf covers several tokens") {
  const ParsedSentence s = Parse(testing::kMultiWord);
  REQUIRE(s.tokens.size() == 7);
  const ConstituencyNode* leaf = NodeAt(s.tree, {0, 0});
  REQUIRE(leaf != nullptr);
  CHECK(leaf->is_leaf());
  CHECK(*leaf->leaf_tokens == TokenSpan{0, 3});
  CHECK(s.tokens[1].pos == "NNP");
  CHECK(s.text == "New York Central approves the plan.");
}

TEST_CASE("node_at") {
  const ParsedSentence s = Parse(testing::kXButton);
  CHECK(NodeAt(s.tree, {}) == &s.tree);
  REQUIRE(NodeAt(s.tree, {2}) != nullptr);
  CHECK(NodeAt(s.tree, {2})->label == "SBAR");
  CHECK(NodeAt(s.tree, {5}) == nullptr);
  CHECK(NodeAt(s.tree, {0, 0, 0}) == nullptr);  // below a leaf
}

TEST_CASE("yield_of") {
  const ParsedSentence s = Parse(testing::kXButton);
  CHECK(YieldOf(s.tree, {2, 1}, s.tokens) == "the x-button is pressed");
  CHECK(YieldOf(s.tree, {}, s.tokens) ==
        "The application is terminated when the x-button is pressed.");
  CHECK_FALSE(YieldOf(s.tree, {9}, s.tokens).has_value());
}

TEST_CASE("detokenization rules") {
  std::vector<Token> tokens;
  for (const char* w : {"Press", "(", "OK", ")", ",", "go", ";", "then", "stop", "!"}) {
    tokens.push_back({tokens.size(), w, "X"});
  }
  CHECK(Detokenize(tokens) == "Press (OK), go; then stop!");
  CHECK(Detokenize(tokens, {1, 4}) == "(OK)");
  CHECK(NormalizeWhitespace("  a \t b\n c  ") == "a b c");
  CHECK(ToLower("If IF iF") == "if if if");
}

TEST_CASE("round trip through the bracketed form") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const ParsedSentence a = Parse(testing::RandomTree(rng, 15));
    const ParsedSentence b = Parse(ToBracketed(a.tree, a.tokens));
    CHECK(a == b);
  }
  for (auto ptb : {testing::kIfDoor, testing::kIfFile, testing::kXButton,
                   testing::kMultiWord, testing::kTrailingIf}) {
    const ParsedSentence a = Parse(ptb);
    CHECK(a == Parse(ToBracketed(a.tree, a.tokens)));
  }
}

TEST_CASE("root yield reconstructs every fixture text") {
  const auto corpus = LoadCorpusDirectory(testing::DataDir() / "corpus");
  std::size_t checked = 0;
  for (const auto& a : corpus) {
    for (const auto& r : a.records) {
      if (!r.processable()) continue;
      CHECK(YieldOf(r.sentence->tree, {}, r.sentence->tokens) ==
            NormalizeWhitespace(r.text));
      ++checked;
    }
  }
  CHECK(checked > 300);
}

TEST_CASE("validate_sentence") {
  ParsedSentence s = Parse(testing::kPlain);
  CHECK(ValidateSentence(s).empty());
  s.text = "The alarm rings.";
  CHECK_FALSE(ValidateSentence(s).empty());
  s = Parse(testing::kPlain);
  s.tokens.pop_back();
  CHECK_FALSE(ValidateSentence(s).empty());
}

TEST_CASE("tree paths") {
  const TreePath p{0, 2};
  CHECK(p.child(1) == TreePath{0, 2, 1});
  CHECK(p.parent() == TreePath{0});
  CHECK(TreePath{0}.is_prefix_of(p));
  CHECK_FALSE(TreePath{1}.is_prefix_of(p));
  CHECK(TreePath{}.is_prefix_of(p));
  CHECK(TreePath{} < TreePath{0});
  CHECK(p.depth() == 2);
}

}  // namespace
}  // namespace ceglearn
