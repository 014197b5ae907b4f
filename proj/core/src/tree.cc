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

#include "ceglearn/tree.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <utility>

namespace ceglearn {

namespace {

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsClosingPunct(std::string_view t) {
  return t == "," || t == "." || t == ";" || t == ":" || t == "!" ||
         t == "?" || t == ")";
}

// Recursive-descent reader for bracketed trees. Tokens are appended as
// leaves are completed, so indices come out left to right.
class BracketReader {
 public:
  explicit BracketReader(std::string_view input) : in_(input) {}

  ConstituencyNode ReadTree(std::vector<Token>* tokens) {
    const std::size_t open = pos_;
    if (AtEnd()) {
      throw TreeParseError(TreeParseError::Kind::kUnbalanced, pos_,
                           "unbalanced parentheses: input ends before '('");
    }
    if (in_[pos_] != '(') {
      throw TreeParseError(TreeParseError::Kind::kUnbalanced, pos_,
                           "expected '('");
    }
    ++pos_;
    const std::size_t label_offset = pos_;
    std::string label = ReadAtom();
    if (label.empty()) {
      throw TreeParseError(TreeParseError::Kind::kEmptyLabel, label_offset,
                           "empty constituent label");
    }

    std::vector<ConstituencyNode> children;
    std::vector<std::string> words;
    for (;;) {
      SkipSpace();
      if (AtEnd()) {
        throw TreeParseError(TreeParseError::Kind::kUnbalanced, pos_,
                             "unbalanced parentheses: missing ')' for '(' at " +
                                 std::to_string(open));
      }
      const char c = in_[pos_];
      if (c == ')') {
        ++pos_;
        break;
      }
      if (c == '(') {
        if (!words.empty()) {
          throw TreeParseError(TreeParseError::Kind::kMixedChildren, pos_,
                               "constituent '" + label +
                                   "' mixes words and subtrees");
        }
        children.push_back(ReadTree(tokens));
      } else {
        if (!children.empty()) {
          throw TreeParseError(TreeParseError::Kind::kMixedChildren, pos_,
                               "constituent '" + label +
                                   "' mixes words and subtrees");
        }
        words.push_back(ReadAtom());
      }
    }

    if (!words.empty()) {
      const std::size_t first = tokens->size();
      for (auto& w : words) {
        tokens->push_back(Token{tokens->size(), std::move(w), label});
      }
      return MakeLeaf(std::move(label), TokenSpan{first, tokens->size()});
    }
    if (children.empty()) {
      throw TreeParseError(TreeParseError::Kind::kLeafWithoutWord, open,
                           "leaf '" + label + "' has no word");
    }
    return MakeInternal(std::move(label), std::move(children));
  }

  void SkipSpace() {
    while (!AtEnd() && IsSpace(in_[pos_])) ++pos_;
  }
  bool AtEnd() const { return pos_ >= in_.size(); }
  std::size_t pos() const { return pos_; }
  char peek() const { return in_[pos_]; }

 private:
  std::string ReadAtom() {
    const std::size_t start = pos_;
    while (!AtEnd() && !IsSpace(in_[pos_]) && in_[pos_] != '(' &&
           in_[pos_] != ')') {
      ++pos_;
    }
    return std::string(in_.substr(start, pos_ - start));
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

std::string WithOffset(const std::string& what, std::size_t offset) {
  return what + " (byte offset " + std::to_string(offset) + ")";
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::optional<std::size_t> ParseIndex(std::string_view s) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

void WriteBracketed(const ConstituencyNode& node,
                    std::span<const Token> tokens, std::string* out) {
  *out += '(';
  *out += node.label;
  if (node.is_leaf()) {
    for (std::size_t i = node.leaf_tokens->begin; i < node.leaf_tokens->end;
         ++i) {
      *out += ' ';
      *out += tokens[i].text;
    }
  } else {
    for (const auto& child : node.children) {
      *out += ' ';
      WriteBracketed(child, tokens, out);
    }
  }
  *out += ')';
}

// Returns an error description, or empty when the subtree is consistent.
std::string CheckNode(const ConstituencyNode& node, std::size_t* next_token) {
  if (node.label.empty()) return "empty label";
  if (node.is_leaf()) {
    if (!node.children.empty()) return "leaf '" + node.label + "' has children";
    if (node.leaf_tokens->empty()) return "leaf '" + node.label + "' has no token";
    if (node.leaf_tokens->begin != *next_token) {
      return "leaf tokens out of order at token " +
             std::to_string(node.leaf_tokens->begin);
    }
    if (!(node.span == *node.leaf_tokens)) return "leaf span mismatch";
    *next_token = node.leaf_tokens->end;
    return {};
  }
  if (node.children.empty()) return "internal node '" + node.label + "' has no children";
  const std::size_t begin = *next_token;
  for (const auto& child : node.children) {
    if (auto err = CheckNode(child, next_token); !err.empty()) return err;
  }
  if (!(node.span == TokenSpan{begin, *next_token})) {
    return "span of '" + node.label + "' does not match its children";
  }
  return {};
}

}  // namespace

TreePath TreePath::child(std::size_t index) const {
  TreePath out = *this;
  out.steps.push_back(index);
  return out;
}

TreePath TreePath::parent() const {
  if (steps.empty()) throw std::logic_error("root path has no parent");
  TreePath out = *this;
  out.steps.pop_back();
  return out;
}

bool TreePath::is_prefix_of(const TreePath& other) const {
  return steps.size() <= other.steps.size() &&
         std::equal(steps.begin(), steps.end(), other.steps.begin());
}

std::string TreePath::ToString() const {
  std::string out = "[";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(steps[i]);
  }
  return out + "]";
}

ConstituencyNode MakeLeaf(std::string label, TokenSpan tokens) {
  ConstituencyNode node;
  node.label = std::move(label);
  node.leaf_tokens = tokens;
  node.span = tokens;
  return node;
}

ConstituencyNode MakeInternal(std::string label,
                              std::vector<ConstituencyNode> children) {
  if (children.empty()) {
    throw std::invalid_argument("internal node needs at least one child");
  }
  for (std::size_t i = 1; i < children.size(); ++i) {
    if (children[i].span.begin != children[i - 1].span.end) {
      throw std::invalid_argument("children of '" + label +
                                  "' are not adjacent");
    }
  }
  ConstituencyNode node;
  node.label = std::move(label);
  node.span = TokenSpan{children.front().span.begin, children.back().span.end};
  node.children = std::move(children);
  return node;
}

TreeParseError::TreeParseError(Kind kind, std::size_t offset,
                               const std::string& what)
    : std::runtime_error(WithOffset(what, offset)),
      kind_(kind),
      offset_(offset) {}

DependencyParseError::DependencyParseError(Kind kind, std::size_t line,
                                           const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      kind_(kind),
      line_(line) {}

ParsedSentence ParseBracketedTree(std::string_view input, std::string id) {
  BracketReader reader(input);
  reader.SkipSpace();
  if (reader.AtEnd()) {
    throw TreeParseError(TreeParseError::Kind::kEmptyInput, 0, "empty input");
  }
  ParsedSentence sentence;
  sentence.id = std::move(id);
  const std::size_t root_offset = reader.pos();
  sentence.tree = reader.ReadTree(&sentence.tokens);
  reader.SkipSpace();
  if (!reader.AtEnd()) {
    if (reader.peek() == ')') {
      throw TreeParseError(TreeParseError::Kind::kUnbalanced, reader.pos(),
                           "unbalanced parentheses: unexpected ')'");
    }
    throw TreeParseError(TreeParseError::Kind::kTrailingInput, reader.pos(),
                         "trailing input after tree");
  }
  if (sentence.tree.label != "S") {
    throw TreeParseError(TreeParseError::Kind::kRootNotS, root_offset + 1,
                         "root label is '" + sentence.tree.label +
                             "', expected 'S'");
  }
  sentence.text = Detokenize(sentence.tokens);
  return sentence;
}

std::string ToBracketed(const ConstituencyNode& tree,
                        std::span<const Token> tokens) {
  std::string out;
  WriteBracketed(tree, tokens, &out);
  return out;
}

std::vector<DependencyEdge> ParseDependencies(
    std::string_view input, std::optional<std::size_t> token_count) {
  using Kind = DependencyParseError::Kind;
  std::vector<DependencyEdge> edges;
  std::vector<bool> seen;
  std::size_t line_no = 0;
  std::size_t root_count = 0;
  std::size_t last_line = 0;

  std::size_t start = 0;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (!edges.empty()) break;
      if (end == input.size()) break;
      continue;
    }
    if (line.front() == '#') continue;

    const auto fields = SplitTabs(line);
    if (fields.size() != 10) {
      throw DependencyParseError(Kind::kColumnCount, line_no,
                                 "expected 10 tab-separated columns, found " +
                                     std::to_string(fields.size()));
    }
    if (fields[0].find_first_of("-.") != std::string_view::npos) continue;

    const auto id = ParseIndex(fields[0]);
    if (!id || *id == 0) {
      throw DependencyParseError(Kind::kBadField, line_no,
                                 "bad token id '" + std::string(fields[0]) + "'");
    }
    const auto head = ParseIndex(fields[6]);
    if (!head) {
      throw DependencyParseError(Kind::kBadField, line_no,
                                 "bad head '" + std::string(fields[6]) + "'");
    }
    const std::size_t dependent = *id - 1;
    if (dependent >= seen.size()) seen.resize(dependent + 1, false);
    if (seen[dependent]) {
      throw DependencyParseError(Kind::kDuplicateDependent, line_no,
                                 "token " + std::to_string(*id) +
                                     " appears twice as dependent");
    }
    seen[dependent] = true;

    DependencyEdge edge;
    edge.dependent = dependent;
    if (*head == 0) {
      ++root_count;
      if (root_count > 1) {
        throw DependencyParseError(Kind::kMultipleRoots, line_no,
                                   "more than one ROOT-headed token");
      }
    } else {
      edge.head = *head - 1;
    }
    edge.relation = std::string(fields[7]);
    edges.push_back(std::move(edge));
    last_line = line_no;
    if (end == input.size()) break;
  }

  // An absent block is fine; deps are optional.
  if (edges.empty()) return edges;
  if (root_count == 0) {
    throw DependencyParseError(Kind::kNoRoot, last_line, "no ROOT-headed token");
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw DependencyParseError(Kind::kTokenCount, last_line,
                                 "token " + std::to_string(i + 1) +
                                     " has no row");
    }
  }
  if (token_count && edges.size() != *token_count) {
    throw DependencyParseError(Kind::kTokenCount, last_line,
                               std::to_string(edges.size()) +
                                   " rows for a sentence of " +
                                   std::to_string(*token_count) + " tokens");
  }
  for (const auto& e : edges) {
    if (e.head && *e.head >= edges.size()) {
      throw DependencyParseError(Kind::kBadField, last_line,
                                 "head of token " +
                                     std::to_string(e.dependent + 1) +
                                     " is out of range");
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const DependencyEdge& a, const DependencyEdge& b) {
              return a.dependent < b.dependent;
            });
  return edges;
}

const ConstituencyNode* NodeAt(const ConstituencyNode& tree,
                               const TreePath& path) {
  const ConstituencyNode* node = &tree;
  for (const std::size_t step : path.steps) {
    if (step >= node->children.size()) return nullptr;
    node = &node->children[step];
  }
  return node;
}

std::optional<std::string> YieldOf(const ConstituencyNode& tree,
                                   const TreePath& path,
                                   std::span<const Token> tokens) {
  const ConstituencyNode* node = NodeAt(tree, path);
  if (node == nullptr) return std::nullopt;
  return Detokenize(tokens, node->span);
}

std::string Detokenize(std::span<const Token> tokens) {
  return Detokenize(tokens, TokenSpan{0, tokens.size()});
}

std::string Detokenize(std::span<const Token> tokens, TokenSpan span) {
  std::string out;
  for (std::size_t i = span.begin; i < span.end && i < tokens.size(); ++i) {
    const std::string& t = tokens[i].text;
    if (i != span.begin && !IsClosingPunct(t) &&
        !(out.size() && out.back() == '(')) {
      out += ' ';
    }
    out += t;
  }
  return NormalizeWhitespace(out);
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (const char c : text) {
    if (IsSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string ValidateSentence(const ParsedSentence& sentence) {
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& t = sentence.tokens[i];
    if (t.index != i) return "token indices are not consecutive at " + std::to_string(i);
    if (t.text.empty()) return "token " + std::to_string(i) + " has empty text";
  }
  if (sentence.tree.label != "S") {
    return "root label is '" + sentence.tree.label + "', expected 'S'";
  }
  std::size_t next = 0;
  if (auto err = CheckNode(sentence.tree, &next); !err.empty()) return err;
  if (next != sentence.tokens.size()) {
    return "tree leaves cover " + std::to_string(next) + " of " +
           std::to_string(sentence.tokens.size()) + " tokens";
  }
  if (NormalizeWhitespace(sentence.text) != Detokenize(sentence.tokens)) {
    return "text does not match the detokenized tokens: \"" +
           Detokenize(sentence.tokens) + "\"";
  }
  if (sentence.deps && !sentence.deps->empty()) {
    const auto& deps = *sentence.deps;
    if (deps.size() != sentence.tokens.size()) {
      return "dependency edge count differs from token count";
    }
    std::vector<bool> seen(deps.size(), false);
    std::size_t roots = 0;
    for (const auto& e : deps) {
      if (e.dependent >= deps.size() || seen[e.dependent]) {
        return "dependency edges are not one per token";
      }
      seen[e.dependent] = true;
      if (!e.head) ++roots;
      else if (*e.head >= deps.size()) return "dependency head out of range";
    }
    if (roots != 1) return "dependency edges need exactly one ROOT";
  }
  return {};
}

}  // namespace ceglearn
