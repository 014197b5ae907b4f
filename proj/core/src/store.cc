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

// Store document persistence.

#include <algorithm>
#include <set>

#include "ceglearn/engine.h"
#include "json_codec.h"

namespace ceglearn {

namespace {

using internal::json;

constexpr std::uint64_t kStoreVersion = 1;

json EntryToJson(const CorpusEntry& entry) {
  json out = {
      {"id", entry.sentence.id},
      {"text", entry.sentence.text},
      {"ptb", ToBracketed(entry.sentence.tree, entry.sentence.tokens)},
  };
  if (entry.sentence.deps) {
    out["conllu"] = internal::DependenciesToConllu(entry.sentence);
  }
  if (entry.gold) {
    out["gold"] = {{"cause", internal::SpanToJson(entry.gold->cause.span)},
                   {"effect", internal::SpanToJson(entry.gold->effect.span)}};
  }
  return out;
}

CorpusEntry EntryFromJson(const json& value) {
  internal::ExpectFields(value, "corpus[]", {"id", "text", "ptb"},
                         {"conllu", "gold"});
  const std::string id = internal::StringField(value, "id", "corpus[]");
  const std::string where = "corpus entry '" + id + "'";
  CorpusEntry entry;
  try {
    entry.sentence =
        ParseBracketedTree(internal::StringField(value, "ptb", where), id);
    if (value.contains("conllu")) {
      entry.sentence.deps = ParseDependencies(
          internal::StringField(value, "conllu", where),
          entry.sentence.tokens.size());
    }
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
  entry.sentence.text = internal::StringField(value, "text", where);
  if (auto err = ValidateSentence(entry.sentence); !err.empty()) {
    throw std::invalid_argument(where + ": " + err);
  }
  if (value.contains("gold")) {
    const json& gold = value.at("gold");
    internal::ExpectFields(gold, where + ".gold", {"cause", "effect"});
    entry.gold = MakeGraph(
        entry.sentence,
        internal::SpanFromJson(gold.at("cause"), where + ".gold.cause"),
        internal::SpanFromJson(gold.at("effect"), where + ".gold.effect"));
  }
  return entry;
}

std::vector<std::string> StringList(const json& value, std::string_view where) {
  if (!value.is_array()) {
    throw std::invalid_argument(std::string(where) + " must be an array");
  }
  std::vector<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) {
      throw std::invalid_argument(std::string(where) + " must hold strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

EngineState DecodeState(const json& doc) {
  internal::ExpectFields(
      doc, "store",
      {"version", "patterns", "noncausal", "next_pattern_id", "corpus"},
      {"conflicts"});
  const std::uint64_t version = internal::UintField(doc, "version", "store");
  if (version != kStoreVersion) {
    throw StoreError("unsupported store version " + std::to_string(version) +
                     " (expected " + std::to_string(kStoreVersion) + ")");
  }

  EngineState state;
  const json& corpus = doc.at("corpus");
  if (!corpus.is_array()) throw std::invalid_argument("store.corpus must be an array");
  for (const auto& e : corpus) {
    CorpusEntry entry = EntryFromJson(e);
    const std::string id = entry.sentence.id;
    if (!state.corpus
             .emplace(id, std::make_shared<const CorpusEntry>(std::move(entry)))
             .second) {
      throw std::invalid_argument("duplicate corpus id '" + id + "'");
    }
  }

  const json& patterns = doc.at("patterns");
  if (!patterns.is_array()) {
    throw std::invalid_argument("store.patterns must be an array");
  }
  for (const auto& p : patterns) state.patterns.push_back(internal::PatternFromJson(p));
  std::sort(state.patterns.begin(), state.patterns.end(),
            [](const Pattern& a, const Pattern& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < state.patterns.size(); ++i) {
    if (state.patterns[i].id == state.patterns[i - 1].id) {
      throw std::invalid_argument("duplicate pattern id " +
                                  std::to_string(state.patterns[i].id));
    }
  }
  for (const auto& p : state.patterns) {
    std::set<std::string> unique(p.accepted.begin(), p.accepted.end());
    if (unique.size() != p.accepted.size()) {
      throw std::invalid_argument("pattern " + std::to_string(p.id) +
                                  " accepts a sentence twice");
    }
  }

  state.noncausal = StringList(doc.at("noncausal"), "store.noncausal");
  state.next_pattern_id = internal::UintField(doc, "next_pattern_id", "store");
  if (!state.patterns.empty() &&
      state.next_pattern_id <= state.patterns.back().id) {
    throw std::invalid_argument("next_pattern_id must exceed every pattern id");
  }
  if (doc.contains("conflicts")) {
    const json& conflicts = doc.at("conflicts");
    if (!conflicts.is_array()) {
      throw std::invalid_argument("store.conflicts must be an array");
    }
    for (const auto& c : conflicts) {
      internal::ExpectFields(c, "conflicts[]", {"pattern", "sentence"});
      state.conflicts.push_back(
          {internal::UintField(c, "pattern", "conflicts[]"),
           internal::StringField(c, "sentence", "conflicts[]")});
    }
  }
  return state;
}

}  // namespace

std::string SaveStore(const EngineState& state) {
  json patterns = json::array();
  for (const auto& p : state.patterns) patterns.push_back(internal::PatternToJson(p));
  json corpus = json::array();
  for (const auto& [id, entry] : state.corpus) corpus.push_back(EntryToJson(*entry));
  json conflicts = json::array();
  for (const auto& c : state.conflicts) {
    conflicts.push_back({{"pattern", c.pattern_id}, {"sentence", c.sentence_id}});
  }
  json doc = {
      {"version", kStoreVersion},
      {"patterns", std::move(patterns)},
      {"noncausal", state.noncausal},
      {"next_pattern_id", state.next_pattern_id},
      {"corpus", std::move(corpus)},
      {"conflicts", std::move(conflicts)},
  };
  return doc.dump(2) + "\n";
}

EngineState LoadStore(std::string_view document) {
  EngineState state;
  try {
    state = DecodeState(json::parse(document));
  } catch (const json::exception& e) {
    throw StoreError(std::string("malformed store document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw StoreError(std::string("invalid store document: ") + e.what());
  }
  const auto violations = CheckPrinciples(state);
  if (!violations.empty()) {
    throw StoreError("store violates the principles of maintenance: " +
                     violations.front().Describe());
  }
  return state;
}

}  // namespace ceglearn
