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

#include "ceglearn/engine.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <iterator>
#include <set>
#include <tuple>
#include <utility>

namespace ceglearn {

namespace {

bool HasAlnum(std::string_view word) {
  return std::any_of(word.begin(), word.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
  });
}

std::set<std::string> KeywordsUnder(const ParsedSentence& sentence,
                                    const ConstituencyNode& node) {
  std::set<std::string> out;
  for (std::size_t i = node.span.begin; i < node.span.end; ++i) {
    const std::string& text = sentence.tokens[i].text;
    if (HasAlnum(text)) out.insert(ToLower(text));
  }
  return out;
}

void Apply(const Differentiator& d, Signature& signature, SpecOutcome& out) {
  for (const auto& n : d.bridge) {
    signature.AddNode(n.path, n.label);
    out.added_nodes.push_back(n);
  }
  if (d.kind == Differentiator::Kind::kConstraint) {
    LexicalConstraint c{d.path, d.value};
    signature.AddConstraint(c);
    out.added_constraints.push_back(std::move(c));
  } else {
    signature.AddNode(d.path, d.value);
    out.added_nodes.push_back({d.path, d.value});
  }
}

std::vector<const ParsedSentence*> AcceptedSentences(const EngineState& state,
                                                     const Pattern& pattern) {
  std::vector<const ParsedSentence*> out;
  for (const auto& id : pattern.accepted) {
    const CorpusEntry* entry = state.FindSentence(id);
    if (entry == nullptr) {
      throw std::logic_error("accepted sentence '" + id + "' is not stored");
    }
    out.push_back(&entry->sentence);
  }
  return out;
}

// Rejects reuse of a sentence id for different content or label.
void CheckAdmissible(const EngineState& state, const ParsedSentence& sentence,
                     const std::optional<CauseEffectGraph>& gold) {
  const CorpusEntry* existing = state.FindSentence(sentence.id);
  if (existing == nullptr) return;
  if (!(existing->sentence == sentence)) {
    throw SentenceConflictError("sentence id '" + sentence.id +
                                "' is already stored with different content");
  }
  if (existing->gold.has_value() != gold.has_value()) {
    throw SentenceConflictError("sentence id '" + sentence.id +
                                "' is already stored with the opposite label");
  }
  if (gold && !(*existing->gold == *gold)) {
    throw SentenceConflictError("sentence id '" + sentence.id +
                                "' is already stored with a different "
                                "cause-effect graph");
  }
}

void Store(EngineState& state, const ParsedSentence& sentence,
           const std::optional<CauseEffectGraph>& gold) {
  if (state.corpus.count(sentence.id)) return;
  state.corpus.emplace(sentence.id,
                       std::make_shared<const CorpusEntry>(
                           CorpusEntry{sentence, gold}));
}

void Validate(const ParsedSentence& sentence) {
  if (sentence.id.empty()) throw std::invalid_argument("sentence id is empty");
  if (auto err = ValidateSentence(sentence); !err.empty()) {
    throw std::invalid_argument("sentence '" + sentence.id + "': " + err);
  }
}

// Builds (but does not register) a pattern for `sentence`, specified
// against every stored non-causal sentence and then against `intruders`.
CreationResult BuildPattern(const EngineState& state,
                            const ParsedSentence& sentence,
                            const CauseEffectGraph& gold,
                            const std::vector<const ParsedSentence*>& intruders) {
  Pattern pattern;
  pattern.id = state.next_pattern_id;
  const std::vector<const ParsedSentence*> accepted{&sentence};

  auto separate = [&](const ParsedSentence& other) -> std::optional<CreationFailure> {
    if (!IsCompliant(pattern.signature, other)) return std::nullopt;
    if (!SpecifySignature(pattern.signature, accepted, other).success) {
      return CreationFailure{CreationFailure::Kind::kSpecification,
                             "cannot differentiate from sentence '" +
                                 other.id + "'"};
    }
    return std::nullopt;
  };
  for (const auto& id : state.noncausal) {
    if (auto f = separate(state.FindSentence(id)->sentence)) return *f;
  }
  for (const ParsedSentence* other : intruders) {
    if (auto f = separate(*other)) return *f;
  }

  GenerationResult generated = GenerateExtractor(sentence, gold);
  if (auto* f = std::get_if<GenerationFailure>(&generated)) {
    return CreationFailure{CreationFailure::Kind::kExtractorGeneration,
                           std::string(RoleName(f->role)) + ": " + f->reason};
  }
  pattern.extractor = std::get<PhraseExtractor>(std::move(generated));
  pattern.accepted.push_back(sentence.id);
  return pattern;
}

void Register(EngineState& state, Pattern pattern,
              const ParsedSentence& sentence, const CauseEffectGraph& gold) {
  Store(state, sentence, gold);
  state.next_pattern_id = pattern.id + 1;
  state.patterns.push_back(std::move(pattern));
}

}  // namespace

const Pattern* EngineState::FindPattern(PatternId id) const {
  auto it = std::lower_bound(
      patterns.begin(), patterns.end(), id,
      [](const Pattern& p, PatternId value) { return p.id < value; });
  return it != patterns.end() && it->id == id ? &*it : nullptr;
}

Pattern* EngineState::FindPattern(PatternId id) {
  return const_cast<Pattern*>(std::as_const(*this).FindPattern(id));
}

const CorpusEntry* EngineState::FindSentence(std::string_view id) const {
  auto it = corpus.find(std::string(id));
  return it == corpus.end() ? nullptr : it->second.get();
}

bool operator==(const EngineState& a, const EngineState& b) {
  if (!(a.patterns == b.patterns && a.noncausal == b.noncausal &&
        a.next_pattern_id == b.next_pattern_id &&
        a.conflicts == b.conflicts && a.corpus.size() == b.corpus.size())) {
    return false;
  }
  return std::equal(a.corpus.begin(), a.corpus.end(), b.corpus.begin(),
                    [](const auto& x, const auto& y) {
                      return x.first == y.first && *x.second == *y.second;
                    });
}

std::vector<PatternId> CompliantPatterns(const EngineState& state,
                                         const ParsedSentence& sentence) {
  std::vector<PatternId> out;
  for (const auto& p : state.patterns) {
    if (IsCompliant(p.signature, sentence)) out.push_back(p.id);
  }
  return out;
}

DetectionResult Test(const EngineState& state, const ParsedSentence& sentence) {
  const Pattern* best = nullptr;
  for (const auto& p : state.patterns) {
    if (!IsCompliant(p.signature, sentence)) continue;
    if (best == nullptr ||
        p.signature.specificity() > best->signature.specificity()) {
      best = &p;
    }
  }
  DetectionResult result;
  if (best == nullptr) return result;
  result.matched_pattern_id = best->id;
  ExtractionResult extracted = ApplyExtractor(best->extractor, sentence);
  if (auto* g = std::get_if<CauseEffectGraph>(&extracted)) {
    result.ceg = std::move(*g);
  } else {
    result.failure = std::get<ExtractionFailure>(extracted);
  }
  return result;
}

std::vector<Differentiator> FindDifferentiators(
    const Signature& signature,
    const std::vector<const ParsedSentence*>& accepted,
    const ParsedSentence& intruder) {
  if (accepted.empty()) {
    throw std::logic_error("specification needs at least one accepted sentence");
  }
  for (const ParsedSentence* s : accepted) {
    if (!IsCompliant(signature, *s)) {
      throw std::logic_error("accepted sentence '" + s->id +
                             "' is not compliant with the signature");
    }
  }
  std::vector<Differentiator> out;

  // Walks positions every accepted sentence fills with one shared label.
  // `bridge` holds the nodes that must be added to reach `path`.
  std::function<void(const TreePath&, const std::vector<NodeAddition>&)> visit =
      [&](const TreePath& path, const std::vector<NodeAddition>& bridge) {
        std::vector<const ConstituencyNode*> nodes;
        for (const ParsedSentence* s : accepted) nodes.push_back(NodeAt(s->tree, path));
        const ConstituencyNode* intruder_node = NodeAt(intruder.tree, path);

        std::set<std::string> common = KeywordsUnder(*accepted[0], *nodes[0]);
        for (std::size_t i = 1; i < accepted.size() && !common.empty(); ++i) {
          const auto words = KeywordsUnder(*accepted[i], *nodes[i]);
          std::set<std::string> kept;
          std::set_intersection(common.begin(), common.end(), words.begin(),
                                words.end(), std::inserter(kept, kept.end()));
          common = std::move(kept);
        }
        if (intruder_node != nullptr) {
          for (const auto& w : KeywordsUnder(intruder, *intruder_node)) {
            common.erase(w);
          }
        }
        for (const auto& w : common) {
          if (signature.has_constraint({path, w})) continue;
          out.push_back({Differentiator::Kind::kConstraint, path, w, bridge});
        }

        std::size_t arity = nodes[0]->children.size();
        for (const auto* n : nodes) arity = std::min(arity, n->children.size());
        for (std::size_t i = 0; i < arity; ++i) {
          const TreePath child = path.child(i);
          if (signature.has_node(child)) {
            visit(child, bridge);
            continue;
          }
          const std::string& child_label = nodes[0]->children[i].label;
          const bool shared = std::all_of(nodes.begin(), nodes.end(),
                                          [&](const ConstituencyNode* n) {
                                            return n->children[i].label == child_label;
                                          });
          if (!shared) continue;
          const bool differs = intruder_node == nullptr ||
                               i >= intruder_node->children.size() ||
                               intruder_node->children[i].label != child_label;
          if (differs) {
            out.push_back({Differentiator::Kind::kNode, child, child_label, bridge});
            continue;
          }
          std::vector<NodeAddition> extended = bridge;
          extended.push_back({child, child_label});
          visit(child, extended);
        }
      };
  visit(TreePath{}, {});

  std::sort(out.begin(), out.end(),
            [](const Differentiator& a, const Differentiator& b) {
              const std::size_t ca = a.cost(), cb = b.cost();
              const std::size_t da = a.path.depth(), db = b.path.depth();
              return std::tie(ca, a.kind, da, a.path, a.value) <
                     std::tie(cb, b.kind, db, b.path, b.value);
            });
  return out;
}

SpecOutcome SpecifySignature(Signature& signature,
                             const std::vector<const ParsedSentence*>& accepted,
                             const ParsedSentence& intruder) {
  if (!IsCompliant(signature, intruder)) {
    throw std::logic_error("intruder '" + intruder.id +
                           "' is not compliant with the signature");
  }
  Signature working = signature;
  SpecOutcome outcome;
  while (IsCompliant(working, intruder)) {
    const auto candidates = FindDifferentiators(working, accepted, intruder);
    if (candidates.empty()) return SpecOutcome{};
    Apply(candidates.front(), working, outcome);
  }
  outcome.success = true;
  signature = std::move(working);
  return outcome;
}

SpecOutcome Specify(EngineState& state, PatternId pattern_id,
                    const ParsedSentence& intruder) {
  Pattern* pattern = state.FindPattern(pattern_id);
  if (pattern == nullptr) {
    throw std::logic_error("no pattern with id " + std::to_string(pattern_id));
  }
  return SpecifySignature(pattern->signature, AcceptedSentences(state, *pattern),
                          intruder);
}

CreationResult CreatePattern(EngineState& state, const ParsedSentence& sentence,
                             const CauseEffectGraph& gold) {
  if (!CompliantPatterns(state, sentence).empty()) {
    throw std::logic_error("sentence '" + sentence.id +
                           "' is already compliant with a pattern");
  }
  CreationResult result = BuildPattern(state, sentence, gold, {});
  if (auto* p = std::get_if<Pattern>(&result)) Register(state, *p, sentence, gold);
  return result;
}

std::string_view TrainOutcomeName(TrainOutcome outcome) {
  switch (outcome) {
    case TrainOutcome::kAlreadyCovered: return "already-covered";
    case TrainOutcome::kCreated: return "created";
    case TrainOutcome::kSpecifiedAndCreated: return "specified-and-created";
    case TrainOutcome::kCreationFailed: return "creation-failed";
    case TrainOutcome::kSpecificationFailed: return "specification-failed";
    case TrainOutcome::kDiscarded: return "discarded";
    case TrainOutcome::kSpecified: return "specified";
  }
  return "unknown";
}

TrainResult TrainCausal(EngineState& state, const ParsedSentence& sentence,
                        const CauseEffectGraph& gold) {
  Validate(sentence);
  if (auto err = ValidateGraph(sentence, gold); !err.empty()) {
    throw std::invalid_argument("sentence '" + sentence.id + "': " + err);
  }
  CheckAdmissible(state, sentence, gold);

  TrainResult result;
  const DetectionResult detected = Test(state, sentence);

  if (!detected.matched_pattern_id) {
    EngineState next = state;
    CreationResult created = CreatePattern(next, sentence, gold);
    if (auto* f = std::get_if<CreationFailure>(&created)) {
      result.outcome = TrainOutcome::kCreationFailed;
      result.detail = f->detail;
      return result;
    }
    result.outcome = TrainOutcome::kCreated;
    result.pattern_id = std::get<Pattern>(created).id;
    result.mutated = true;
    state = std::move(next);
    return result;
  }

  const PatternId matched = *detected.matched_pattern_id;
  if (detected.ceg && detected.ceg->cause.text == gold.cause.text &&
      detected.ceg->effect.text == gold.effect.text) {
    result.outcome = TrainOutcome::kAlreadyCovered;
    result.pattern_id = matched;
    Pattern* pattern = state.FindPattern(matched);
    if (std::find(pattern->accepted.begin(), pattern->accepted.end(),
                  sentence.id) == pattern->accepted.end()) {
      Store(state, sentence, gold);
      pattern->accepted.push_back(sentence.id);
      result.mutated = true;
    }
    return result;
  }

  // Causal intruder: specify the matched pattern against it, then create a
  // pattern for the intruder that excludes the matched pattern's sentences.
  EngineState next = state;
  if (!Specify(next, matched, sentence).success) {
    result.outcome = TrainOutcome::kSpecificationFailed;
    result.detail = "cannot differentiate from pattern " + std::to_string(matched);
    return result;
  }
  const auto previously_accepted =
      AcceptedSentences(next, *next.FindPattern(matched));
  CreationResult created =
      BuildPattern(next, sentence, gold, previously_accepted);
  if (auto* f = std::get_if<CreationFailure>(&created)) {
    result.outcome = TrainOutcome::kSpecificationFailed;
    result.detail = f->detail;
    return result;
  }
  result.outcome = TrainOutcome::kSpecifiedAndCreated;
  result.pattern_id = std::get<Pattern>(created).id;
  result.specified.push_back(matched);
  result.mutated = true;
  Register(next, std::get<Pattern>(std::move(created)), sentence, gold);
  state = std::move(next);
  return result;
}

TrainResult TrainNoncausal(EngineState& state, const ParsedSentence& sentence) {
  Validate(sentence);
  CheckAdmissible(state, sentence, std::nullopt);

  TrainResult result;
  const bool known = std::find(state.noncausal.begin(), state.noncausal.end(),
                               sentence.id) != state.noncausal.end();
  const auto compliant = CompliantPatterns(state, sentence);
  if (compliant.empty()) {
    result.outcome = TrainOutcome::kDiscarded;
  } else {
    result.outcome = TrainOutcome::kSpecified;
    for (const PatternId id : compliant) {
      if (Specify(state, id, sentence).success) {
        result.specified.push_back(id);
        result.mutated = true;
        continue;
      }
      result.outcome = TrainOutcome::kSpecificationFailed;
      Conflict conflict{id, sentence.id};
      if (std::find(state.conflicts.begin(), state.conflicts.end(), conflict) ==
          state.conflicts.end()) {
        state.conflicts.push_back(std::move(conflict));
        result.mutated = true;
      }
      result.detail += (result.detail.empty() ? "" : "; ") +
                       std::string("pattern ") + std::to_string(id) +
                       " cannot be differentiated";
    }
  }
  if (!known) {
    Store(state, sentence, std::nullopt);
    state.noncausal.push_back(sentence.id);
    result.mutated = true;
  }
  return result;
}

std::string PrincipleViolation::Describe() const {
  std::string what;
  switch (kind) {
    case Kind::kAcceptedNotCompliant:
      what = "accepted sentence is not compliant";
      break;
    case Kind::kAcceptedNotApplicable:
      what = "accepted sentence is not applicable";
      break;
    case Kind::kNoncausalCompliant:
      what = "non-causal sentence is compliant";
      break;
    case Kind::kDanglingReference:
      what = "reference to a missing or mislabelled sentence";
      break;
  }
  return what + " (pattern " + std::to_string(pattern_id) + ", sentence '" +
         sentence_id + "')";
}

std::vector<PrincipleViolation> CheckPrinciples(const EngineState& state) {
  using Kind = PrincipleViolation::Kind;
  std::vector<PrincipleViolation> out;
  for (const auto& p : state.patterns) {
    for (const auto& id : p.accepted) {
      const CorpusEntry* entry = state.FindSentence(id);
      if (entry == nullptr || !entry->gold) {
        out.push_back({Kind::kDanglingReference, p.id, id});
      } else if (!IsCompliant(p.signature, entry->sentence)) {
        out.push_back({Kind::kAcceptedNotCompliant, p.id, id});
      } else if (!IsApplicable(p, entry->sentence, *entry->gold)) {
        out.push_back({Kind::kAcceptedNotApplicable, p.id, id});
      }
    }
  }
  for (const auto& id : state.noncausal) {
    const CorpusEntry* entry = state.FindSentence(id);
    if (entry == nullptr || entry->gold) {
      out.push_back({Kind::kDanglingReference, 0, id});
      continue;
    }
    for (const auto& p : state.patterns) {
      if (!IsCompliant(p.signature, entry->sentence)) continue;
      const Conflict c{p.id, id};
      if (std::find(state.conflicts.begin(), state.conflicts.end(), c) ==
          state.conflicts.end()) {
        out.push_back({Kind::kNoncausalCompliant, p.id, id});
      }
    }
  }
  for (const auto& c : state.conflicts) {
    if (state.FindPattern(c.pattern_id) == nullptr ||
        std::find(state.noncausal.begin(), state.noncausal.end(),
                  c.sentence_id) == state.noncausal.end()) {
      out.push_back({Kind::kDanglingReference, c.pattern_id, c.sentence_id});
    }
  }
  return out;
}

}  // namespace ceglearn
