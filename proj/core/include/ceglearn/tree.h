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

// Sentence representation: tokens, constituency tree, dependency edges and
// the tree-path addressing used by signatures and phrase extractors.

#ifndef CEGLEARN_TREE_H_
#define CEGLEARN_TREE_H_

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ceglearn {

// Half-open range of token indices [begin, end).
struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(const TokenSpan& other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool overlaps(const TokenSpan& other) const {
    return begin < other.end && other.begin < end;
  }
  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
};

struct Token {
  std::size_t index = 0;
  std::string text;
  std::string pos;

  friend bool operator==(const Token&, const Token&) = default;
};

// Sequence of 0-based child indices from the root. The empty path addresses
// the root. Ordering is lexicographic, which is pre-order over a tree.
struct TreePath {
  std::vector<std::size_t> steps;

  TreePath() = default;
  TreePath(std::initializer_list<std::size_t> s) : steps(s) {}
  explicit TreePath(std::vector<std::size_t> s) : steps(std::move(s)) {}

  std::size_t depth() const { return steps.size(); }
  bool is_root() const { return steps.empty(); }
  TreePath child(std::size_t index) const;
  // Requires !is_root().
  TreePath parent() const;
  bool is_prefix_of(const TreePath& other) const;
  std::string ToString() const;

  friend auto operator<=>(const TreePath&, const TreePath&) = default;
  friend bool operator==(const TreePath&, const TreePath&) = default;
};

// A constituent. Leaves are preterminals `(POS word ...)` and carry the
// tokens they dominate; a leaf normally holds exactly one token but a
// multi-word preterminal such as `(NNP New York)` holds several.
struct ConstituencyNode {
  std::string label;
  std::vector<ConstituencyNode> children;
  std::optional<TokenSpan> leaf_tokens;  // present iff leaf
  TokenSpan span;                        // tokens dominated by this node

  bool is_leaf() const { return leaf_tokens.has_value(); }
  friend bool operator==(const ConstituencyNode&,
                         const ConstituencyNode&) = default;
};

ConstituencyNode MakeLeaf(std::string label, TokenSpan tokens);
// Span is computed from the children, which must be adjacent.
ConstituencyNode MakeInternal(std::string label,
                              std::vector<ConstituencyNode> children);

struct DependencyEdge {
  std::optional<std::size_t> head;  // nullopt is the ROOT marker
  std::size_t dependent = 0;
  std::string relation;

  friend bool operator==(const DependencyEdge&,
                         const DependencyEdge&) = default;
};

struct ParsedSentence {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  ConstituencyNode tree;
  std::optional<std::vector<DependencyEdge>> deps;

  friend bool operator==(const ParsedSentence&,
                         const ParsedSentence&) = default;
};

class TreeParseError : public std::runtime_error {
 public:
  enum class Kind {
    kEmptyInput,
    kUnbalanced,
    kEmptyLabel,
    kLeafWithoutWord,
    kMixedChildren,
    kTrailingInput,
    kRootNotS,
  };

  TreeParseError(Kind kind, std::size_t offset, const std::string& what);

  Kind kind() const { return kind_; }
  std::size_t offset() const { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

class DependencyParseError : public std::runtime_error {
 public:
  enum class Kind {
    kColumnCount,
    kBadField,
    kTokenCount,
    kDuplicateDependent,
    kNoRoot,
    kMultipleRoots,
  };

  DependencyParseError(Kind kind, std::size_t line, const std::string& what);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Parses one Penn-Treebank-style bracketing. The resulting sentence text is
// the detokenized token sequence. Throws TreeParseError; error messages name
// the byte offset of the problem.
ParsedSentence ParseBracketedTree(std::string_view input,
                                  std::string id = {});

// Single-line bracketing that ParseBracketedTree reads back identically.
std::string ToBracketed(const ConstituencyNode& tree,
                        std::span<const Token> tokens);

// Reads 10-column CoNLL-U rows. Comment lines, multiword ranges ("3-4") and
// empty nodes ("5.1") are skipped; the block ends at the first blank line
// after data. An empty input yields no edges. When token_count is given the
// number of rows must match it.
std::vector<DependencyEdge> ParseDependencies(
    std::string_view input, std::optional<std::size_t> token_count = {});

// nullptr when a step runs past a node's children.
const ConstituencyNode* NodeAt(const ConstituencyNode& tree,
                               const TreePath& path);

std::optional<std::string> YieldOf(const ConstituencyNode& tree,
                                   const TreePath& path,
                                   std::span<const Token> tokens);

// Joins token texts with single spaces, then removes the space before
// , . ; : ! ? ) and after (.
std::string Detokenize(std::span<const Token> tokens);
std::string Detokenize(std::span<const Token> tokens, TokenSpan span);

// Collapses whitespace runs to one space and trims both ends.
std::string NormalizeWhitespace(std::string_view text);

// ASCII lowercase.
std::string ToLower(std::string_view text);

// Checks the structural invariants of a sentence (token numbering, leaf
// coverage, root label, text/detokenization agreement, dependency tree).
// Returns an empty string when valid, otherwise a description.
std::string ValidateSentence(const ParsedSentence& sentence);

}  // namespace ceglearn

#endif  // CEGLEARN_TREE_H_
