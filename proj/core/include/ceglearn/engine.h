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

// The cause-effect recognition engine.
//
// The engine keeps a store of causality patterns, the list of sentences known
// to be non-causal, and every sentence it has been trained with. Two
// principles of maintenance hold after every operation:
//
//   1. every accepted sentence of a pattern is compliant with its signature
//      and applicable by its extractor;
//   2. no known non-causal sentence is compliant with any pattern, except for
//      pairs recorded in `conflicts` (non-causal intruders that no
//      specification could separate).
//
// Training operations are transactional: on failure the state is left
// exactly as it was. State is a value; mutation must be externally
// serialized, reads may run concurrently.

#ifndef CEGLEARN_ENGINE_H_
#define CEGLEARN_ENGINE_H_

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ceglearn/pattern.h"
#include "ceglearn/signature.h"
#include "ceglearn/tree.h"

namespace ceglearn {

struct CorpusEntry {
  ParsedSentence sentence;
  std::optional<CauseEffectGraph> gold;  // present iff causal

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

// A non-causal sentence that stays compliant with a pattern because no
// specification could differentiate it from the accepted sentences.
struct Conflict {
  PatternId pattern_id = 0;
  std::string sentence_id;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

struct EngineState {
  std::vector<Pattern> patterns;     // ascending id
  std::vector<std::string> noncausal;  // oldest first
  // Entries are shared between copies of the state; they are never
  // modified in place.
  std::map<std::string, std::shared_ptr<const CorpusEntry>> corpus;
  PatternId next_pattern_id = 1;
  std::vector<Conflict> conflicts;

  const Pattern* FindPattern(PatternId id) const;
  Pattern* FindPattern(PatternId id);
  const CorpusEntry* FindSentence(std::string_view id) const;
};

// Structural equality, comparing corpus entries by value.
bool operator==(const EngineState& a, const EngineState& b);

struct DetectionResult {
  std::optional<PatternId> matched_pattern_id;
  std::optional<CauseEffectGraph> ceg;
  std::optional<ExtractionFailure> failure;
};

// Picks the most specific compliant pattern (largest node + constraint
// count, then lowest id) and applies its extractor.
DetectionResult Test(const EngineState& state, const ParsedSentence& sentence);

// Ids of all patterns compliant with the sentence, ascending.
std::vector<PatternId> CompliantPatterns(const EngineState& state,
                                         const ParsedSentence& sentence);

struct NodeAddition {
  TreePath path;
  std::string label;

  friend bool operator==(const NodeAddition&, const NodeAddition&) = default;
};

struct SpecOutcome {
  bool success = false;
  std::vector<NodeAddition> added_nodes;
  std::vector<LexicalConstraint> added_constraints;
};

// A candidate growth of a signature: the `bridge` nodes (ancestors not yet
// in the signature, root side first) followed by one node or constraint.
struct Differentiator {
  enum class Kind { kConstraint, kNode };
  Kind kind = Kind::kConstraint;
  TreePath path;
  std::string value;  // keyword or label
  std::vector<NodeAddition> bridge;

  std::size_t cost() const { return bridge.size() + 1; }

  friend bool operator==(const Differentiator&,
                         const Differentiator&) = default;
};

// All growths of `signature` that keep every sentence of `accepted`
// compliant but make `intruder` non-compliant, most precise first: fewest
// additions, then constraints before nodes, then shallowest path, then
// leftmost path, then keyword/label. Bridges only pass through positions
// where every accepted sentence and the intruder agree, and stop at the
// first position the intruder differs. Requires all accepted sentences to
// be compliant. Keywords are lowercased words containing a letter or digit.
std::vector<Differentiator> FindDifferentiators(
    const Signature& signature,
    const std::vector<const ParsedSentence*>& accepted,
    const ParsedSentence& intruder);

// Grows `signature` greedily until `intruder` is no longer compliant. On
// failure `signature` is untouched.
SpecOutcome SpecifySignature(Signature& signature,
                             const std::vector<const ParsedSentence*>& accepted,
                             const ParsedSentence& intruder);

// Specifies a stored pattern against an intruder using the pattern's
// accepted sentences. Throws std::logic_error if the intruder is not
// compliant or the pattern does not exist.
SpecOutcome Specify(EngineState& state, PatternId pattern_id,
                    const ParsedSentence& intruder);

struct CreationFailure {
  enum class Kind { kSpecification, kExtractorGeneration };
  Kind kind = Kind::kSpecification;
  std::string detail;
};

using CreationResult = std::variant<Pattern, CreationFailure>;

// Registers a new pattern for a causal sentence no pattern is compliant
// with: root-only signature, specified against every stored non-causal
// sentence, extractor generated from the gold graph. Throws
// std::logic_error if some pattern is already compliant.
CreationResult CreatePattern(EngineState& state, const ParsedSentence& sentence,
                             const CauseEffectGraph& gold);

enum class TrainOutcome {
  kAlreadyCovered,
  kCreated,
  kSpecifiedAndCreated,
  kCreationFailed,
  kSpecificationFailed,
  kDiscarded,
  kSpecified,
};

std::string_view TrainOutcomeName(TrainOutcome outcome);

struct TrainResult {
  TrainOutcome outcome = TrainOutcome::kDiscarded;
  // Accepting pattern (already-covered), or the created pattern.
  std::optional<PatternId> pattern_id;
  // Patterns specified by this step.
  std::vector<PatternId> specified;
  std::string detail;
  bool mutated = false;
};

// Thrown when a sentence id is reused with different content or label.
class SentenceConflictError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

TrainResult TrainCausal(EngineState& state, const ParsedSentence& sentence,
                        const CauseEffectGraph& gold);

TrainResult TrainNoncausal(EngineState& state, const ParsedSentence& sentence);

struct PrincipleViolation {
  enum class Kind {
    kAcceptedNotCompliant,
    kAcceptedNotApplicable,
    kNoncausalCompliant,
    kDanglingReference,
  };
  Kind kind;
  PatternId pattern_id = 0;
  std::string sentence_id;

  std::string Describe() const;
};

// Exhaustively checks both principles over the stored corpus. Non-causal
// compliance recorded in `conflicts` is exempt.
std::vector<PrincipleViolation> CheckPrinciples(const EngineState& state);

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// JSON store document (see docs/store-format.md).
std::string SaveStore(const EngineState& state);
// Throws StoreError on malformed documents, version mismatch, or documents
// violating either principle.
EngineState LoadStore(std::string_view document);

}  // namespace ceglearn

#endif  // CEGLEARN_ENGINE_H_
