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

// Cause-effect graphs, phrase extractors and causality patterns.

#ifndef CEGLEARN_PATTERN_H_
#define CEGLEARN_PATTERN_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ceglearn/signature.h"
#include "ceglearn/tree.h"

namespace ceglearn {

enum class Role { kCause, kEffect };

std::string_view RoleName(Role role);

struct Phrase {
  std::string text;
  TokenSpan span;

  friend bool operator==(const Phrase&, const Phrase&) = default;
};

// Two-node cause-effect graph: one cause phrase, one effect phrase.
struct CauseEffectGraph {
  Phrase cause;
  Phrase effect;

  friend bool operator==(const CauseEffectGraph&,
                         const CauseEffectGraph&) = default;
};

// Builds a gold graph from token spans. Throws std::invalid_argument when a
// span is empty, out of bounds, or the two spans overlap.
CauseEffectGraph MakeGraph(const ParsedSentence& sentence, TokenSpan cause,
                           TokenSpan effect);

// Empty string when `graph` is valid for `sentence`.
std::string ValidateGraph(const ParsedSentence& sentence,
                          const CauseEffectGraph& graph);

// Tree paths in document order whose yields, concatenated, form one phrase.
struct Selector {
  Role role = Role::kCause;
  std::vector<TreePath> paths;

  friend bool operator==(const Selector&, const Selector&) = default;
};

struct PhraseExtractor {
  Selector cause{Role::kCause, {}};
  Selector effect{Role::kEffect, {}};

  friend bool operator==(const PhraseExtractor&,
                         const PhraseExtractor&) = default;
};

struct ExtractionFailure {
  enum class Kind {
    kAbsentPath,        // a selector path does not exist in the sentence
    kNonContiguous,     // one role's node yields are not adjacent in order
    kOverlappingRoles,  // cause and effect yields share tokens
  };
  Kind kind = Kind::kAbsentPath;
  Role role = Role::kCause;
  TreePath path;

  std::string Describe() const;
  friend bool operator==(const ExtractionFailure&,
                         const ExtractionFailure&) = default;
};

using ExtractionResult = std::variant<CauseEffectGraph, ExtractionFailure>;

ExtractionResult ApplyExtractor(const PhraseExtractor& extractor,
                                const ParsedSentence& sentence);

struct GenerationFailure {
  Role role = Role::kCause;
  TokenSpan span;
  std::string reason;
};

using GenerationResult = std::variant<PhraseExtractor, GenerationFailure>;

// Covers each gold span left to right with the highest nodes whose yield
// lies inside the remaining span. Fails when the span cuts through a
// multi-word leaf. On success ApplyExtractor(result, sentence) == gold.
// Throws std::invalid_argument when `gold` is not valid for `sentence`.
GenerationResult GenerateExtractor(const ParsedSentence& sentence,
                                   const CauseEffectGraph& gold);

// Extraction succeeds and both phrases equal the gold phrases exactly.
bool ExtractsGold(const PhraseExtractor& extractor,
                  const ParsedSentence& sentence,
                  const CauseEffectGraph& gold);

using PatternId = std::uint64_t;

struct Pattern {
  PatternId id = 0;
  Signature signature;
  PhraseExtractor extractor;
  std::vector<std::string> accepted;  // sentence ids, oldest first

  friend bool operator==(const Pattern&, const Pattern&) = default;
};

bool IsApplicable(const Pattern& pattern, const ParsedSentence& sentence,
                  const CauseEffectGraph& gold);

inline bool IsAccepted(const Pattern& pattern, const ParsedSentence& sentence,
                       const CauseEffectGraph& gold) {
  return IsCompliant(pattern.signature, sentence) &&
         IsApplicable(pattern, sentence, gold);
}

}  // namespace ceglearn

#endif  // CEGLEARN_PATTERN_H_
