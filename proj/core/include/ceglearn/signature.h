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

#ifndef CEGLEARN_SIGNATURE_H_
#define CEGLEARN_SIGNATURE_H_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ceglearn/tree.h"

namespace ceglearn {

// A sentence complying with a constrained node must contain `keyword`
// (compared case-insensitively) among the words under that node.
struct LexicalConstraint {
  TreePath path;
  std::string keyword;  // lowercase

  friend bool operator==(const LexicalConstraint&,
                         const LexicalConstraint&) = default;
};

// Partial constituency tree identifying a pattern. Nodes are addressed by
// absolute tree paths; the set is closed under taking parents and always
// contains the root labelled "S". Signatures only ever grow.
class Signature {
 public:
  // Root-only signature.
  Signature();

  // Rebuilds a signature from stored parts. Throws std::invalid_argument if
  // the parts violate the invariants.
  static Signature FromParts(std::map<TreePath, std::string> nodes,
                             std::vector<LexicalConstraint> constraints);

  const std::map<TreePath, std::string>& nodes() const { return nodes_; }
  const std::vector<LexicalConstraint>& constraints() const {
    return constraints_;
  }

  bool has_node(const TreePath& path) const { return nodes_.count(path) > 0; }
  bool has_constraint(const LexicalConstraint& c) const;

  // Node count plus constraint count; used to rank competing patterns.
  std::size_t specificity() const {
    return nodes_.size() + constraints_.size();
  }

  // The parent of `path` must already be present and `path` must not be.
  void AddNode(const TreePath& path, std::string label);
  // The constrained path must address a present node. The keyword is
  // lowercased.
  void AddConstraint(LexicalConstraint constraint);

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::map<TreePath, std::string> nodes_;
  std::vector<LexicalConstraint> constraints_;
};

// Positional embedding: every signature node exists at the same path in the
// sentence tree with an equal label, and every lexical constraint finds its
// keyword under the corresponding sentence node.
bool IsCompliant(const Signature& signature, const ParsedSentence& sentence);

// True when some token inside `span` equals `keyword` ignoring ASCII case.
bool SpanContainsWord(std::span<const Token> tokens, TokenSpan span,
                      std::string_view keyword);

}  // namespace ceglearn

#endif  // CEGLEARN_SIGNATURE_H_
