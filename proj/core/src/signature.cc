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

#include "ceglearn/signature.h"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ceglearn {

Signature::Signature() { nodes_.emplace(TreePath{}, "S"); }

Signature Signature::FromParts(std::map<TreePath, std::string> nodes,
                               std::vector<LexicalConstraint> constraints) {
  auto root = nodes.find(TreePath{});
  if (root == nodes.end() || root->second != "S") {
    throw std::invalid_argument("signature root must be present with label S");
  }
  for (const auto& [path, label] : nodes) {
    if (label.empty()) {
      throw std::invalid_argument("signature node " + path.ToString() +
                                  " has an empty label");
    }
    if (!path.is_root() && nodes.count(path.parent()) == 0) {
      throw std::invalid_argument("signature node " + path.ToString() +
                                  " has no parent");
    }
  }
  Signature sig;
  sig.nodes_ = std::move(nodes);
  for (auto& c : constraints) sig.AddConstraint(std::move(c));
  return sig;
}

bool Signature::has_constraint(const LexicalConstraint& c) const {
  return std::find(constraints_.begin(), constraints_.end(), c) !=
         constraints_.end();
}

void Signature::AddNode(const TreePath& path, std::string label) {
  if (path.is_root()) throw std::invalid_argument("root is always present");
  if (label.empty()) throw std::invalid_argument("empty signature label");
  if (!has_node(path.parent())) {
    throw std::invalid_argument("parent of " + path.ToString() +
                                " is not in the signature");
  }
  if (!nodes_.emplace(path, std::move(label)).second) {
    throw std::invalid_argument("signature already has node " +
                                path.ToString());
  }
}

void Signature::AddConstraint(LexicalConstraint constraint) {
  if (!has_node(constraint.path)) {
    throw std::invalid_argument("constraint path " +
                                constraint.path.ToString() +
                                " is not a signature node");
  }
  if (constraint.keyword.empty()) {
    throw std::invalid_argument("constraint keyword is empty");
  }
  constraint.keyword = ToLower(constraint.keyword);
  if (has_constraint(constraint)) {
    throw std::invalid_argument("duplicate constraint '" + constraint.keyword +
                                "' at " + constraint.path.ToString());
  }
  constraints_.push_back(std::move(constraint));
}

bool SpanContainsWord(std::span<const Token> tokens, TokenSpan span,
                      std::string_view keyword) {
  for (std::size_t i = span.begin; i < span.end && i < tokens.size(); ++i) {
    const std::string& text = tokens[i].text;
    if (text.size() == keyword.size() && ToLower(text) == keyword) return true;
  }
  return false;
}

bool IsCompliant(const Signature& signature, const ParsedSentence& sentence) {
  for (const auto& [path, label] : signature.nodes()) {
    const ConstituencyNode* node = NodeAt(sentence.tree, path);
    if (node == nullptr || node->label != label) return false;
  }
  for (const auto& c : signature.constraints()) {
    const ConstituencyNode* node = NodeAt(sentence.tree, c.path);
    if (node == nullptr ||
        !SpanContainsWord(sentence.tokens, node->span, c.keyword)) {
      return false;
    }
  }
  return true;
}

}  // namespace ceglearn
