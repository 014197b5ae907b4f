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

#include "ceglearn/pattern.h"

#include <optional>
#include <stdexcept>
#include <utility>

namespace ceglearn {

namespace {

std::string SpanString(TokenSpan span) {
  return "[" + std::to_string(span.begin) + "," + std::to_string(span.end) +
         ")";
}

std::string ValidateSpan(const ParsedSentence& sentence, const Phrase& phrase,
                         Role role) {
  const std::string name(RoleName(role));
  if (phrase.span.empty()) return name + " span is empty";
  if (phrase.span.end > sentence.tokens.size()) {
    return name + " span " + SpanString(phrase.span) +
           " exceeds the sentence's " + std::to_string(sentence.tokens.size()) +
           " tokens";
  }
  if (phrase.text != Detokenize(sentence.tokens, phrase.span)) {
    return name + " phrase does not match the text of its span";
  }
  return {};
}

// Resolves one selector to a phrase, or reports why it cannot.
std::variant<Phrase, ExtractionFailure> ResolveSelector(
    const Selector& selector, const ParsedSentence& sentence) {
  if (selector.paths.empty()) {
    throw std::invalid_argument(std::string(RoleName(selector.role)) +
                                " selector has no paths");
  }
  std::optional<TokenSpan> covered;
  for (const TreePath& path : selector.paths) {
    const ConstituencyNode* node = NodeAt(sentence.tree, path);
    if (node == nullptr) {
      return ExtractionFailure{ExtractionFailure::Kind::kAbsentPath,
                               selector.role, path};
    }
    if (covered && node->span.begin != covered->end) {
      return ExtractionFailure{ExtractionFailure::Kind::kNonContiguous,
                               selector.role, path};
    }
    covered = covered ? TokenSpan{covered->begin, node->span.end} : node->span;
  }
  return Phrase{Detokenize(sentence.tokens, *covered), *covered};
}

struct CoverStep {
  const ConstituencyNode* node;
  TreePath path;
};

std::variant<std::vector<TreePath>, std::string> CoverSpan(
    const ConstituencyNode& root, TokenSpan span) {
  std::vector<TreePath> paths;
  std::size_t pos = span.begin;
  while (pos < span.end) {
    std::vector<CoverStep> chain{{&root, TreePath{}}};
    while (!chain.back().node->is_leaf()) {
      const ConstituencyNode& parent = *chain.back().node;
      bool found = false;
      for (std::size_t i = 0; i < parent.children.size(); ++i) {
        const TokenSpan& s = parent.children[i].span;
        if (s.begin <= pos && pos < s.end) {
          chain.push_back({&parent.children[i], chain.back().path.child(i)});
          found = true;
          break;
        }
      }
      if (!found) return "token " + std::to_string(pos) + " is not in the tree";
    }
    const ConstituencyNode& leaf = *chain.back().node;
    if (leaf.span.begin < pos || leaf.span.end > span.end) {
      return "span " + SpanString(span) + " splits the multi-word leaf '" +
             leaf.label + "' at " + SpanString(leaf.span);
    }
    for (const CoverStep& step : chain) {
      if (step.node->span.begin == pos && step.node->span.end <= span.end) {
        paths.push_back(step.path);
        pos = step.node->span.end;
        break;
      }
    }
  }
  return paths;
}

}  // namespace

std::string_view RoleName(Role role) {
  return role == Role::kCause ? "cause" : "effect";
}

std::string ExtractionFailure::Describe() const {
  std::string what;
  switch (kind) {
    case Kind::kAbsentPath:
      what = "absent path ";
      break;
    case Kind::kNonContiguous:
      what = "non-contiguous selection at ";
      break;
    case Kind::kOverlappingRoles:
      what = "cause and effect overlap at ";
      break;
  }
  return what + path.ToString() + " (" + std::string(RoleName(role)) + ")";
}

std::string ValidateGraph(const ParsedSentence& sentence,
                          const CauseEffectGraph& graph) {
  if (auto err = ValidateSpan(sentence, graph.cause, Role::kCause); !err.empty()) {
    return err;
  }
  if (auto err = ValidateSpan(sentence, graph.effect, Role::kEffect);
      !err.empty()) {
    return err;
  }
  if (graph.cause.span.overlaps(graph.effect.span)) {
    return "cause span " + SpanString(graph.cause.span) +
           " overlaps effect span " + SpanString(graph.effect.span);
  }
  return {};
}

CauseEffectGraph MakeGraph(const ParsedSentence& sentence, TokenSpan cause,
                           TokenSpan effect) {
  CauseEffectGraph graph;
  graph.cause = {Detokenize(sentence.tokens, cause), cause};
  graph.effect = {Detokenize(sentence.tokens, effect), effect};
  if (auto err = ValidateGraph(sentence, graph); !err.empty()) {
    throw std::invalid_argument(err);
  }
  return graph;
}

ExtractionResult ApplyExtractor(const PhraseExtractor& extractor,
                                const ParsedSentence& sentence) {
  auto cause = ResolveSelector(extractor.cause, sentence);
  if (auto* f = std::get_if<ExtractionFailure>(&cause)) return *f;
  auto effect = ResolveSelector(extractor.effect, sentence);
  if (auto* f = std::get_if<ExtractionFailure>(&effect)) return *f;

  CauseEffectGraph graph{std::get<Phrase>(std::move(cause)),
                         std::get<Phrase>(std::move(effect))};
  if (graph.cause.span.overlaps(graph.effect.span)) {
    return ExtractionFailure{ExtractionFailure::Kind::kOverlappingRoles,
                             Role::kEffect, extractor.effect.paths.front()};
  }
  return graph;
}

GenerationResult GenerateExtractor(const ParsedSentence& sentence,
                                   const CauseEffectGraph& gold) {
  if (auto err = ValidateGraph(sentence, gold); !err.empty()) {
    throw std::invalid_argument(err);
  }
  PhraseExtractor extractor;
  for (Role role : {Role::kCause, Role::kEffect}) {
    const Phrase& phrase = role == Role::kCause ? gold.cause : gold.effect;
    auto cover = CoverSpan(sentence.tree, phrase.span);
    if (auto* reason = std::get_if<std::string>(&cover)) {
      return GenerationFailure{role, phrase.span, std::move(*reason)};
    }
    Selector& selector =
        role == Role::kCause ? extractor.cause : extractor.effect;
    selector.paths = std::get<std::vector<TreePath>>(std::move(cover));
  }
  return extractor;
}

bool ExtractsGold(const PhraseExtractor& extractor,
                  const ParsedSentence& sentence,
                  const CauseEffectGraph& gold) {
  const ExtractionResult result = ApplyExtractor(extractor, sentence);
  const auto* graph = std::get_if<CauseEffectGraph>(&result);
  return graph != nullptr && graph->cause.text == gold.cause.text &&
         graph->effect.text == gold.effect.text;
}

bool IsApplicable(const Pattern& pattern, const ParsedSentence& sentence,
                  const CauseEffectGraph& gold) {
  return ExtractsGold(pattern.extractor, sentence, gold);
}

}  // namespace ceglearn
