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

// JSON encoding shared by the store, the corpus reader and the service.
// Decoders throw std::invalid_argument with a message naming the offending
// field.

#ifndef CEGLEARN_SRC_JSON_CODEC_H_
#define CEGLEARN_SRC_JSON_CODEC_H_

#include <initializer_list>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ceglearn/engine.h"
#include "ceglearn/pattern.h"
#include "ceglearn/tree.h"

namespace ceglearn::internal {

using nlohmann::json;

// Every key of `object` must be listed in `required` or `optional`, and all
// of `required` must be present.
void ExpectFields(const json& object, std::string_view where,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional = {});

const json& Field(const json& object, std::string_view key,
                  std::string_view where);
std::string StringField(const json& object, std::string_view key,
                        std::string_view where);
std::uint64_t UintField(const json& object, std::string_view key,
                        std::string_view where);

json PathToJson(const TreePath& path);
TreePath PathFromJson(const json& value, std::string_view where);

json SpanToJson(TokenSpan span);
TokenSpan SpanFromJson(const json& value, std::string_view where);

json PatternToJson(const Pattern& pattern);
Pattern PatternFromJson(const json& value);

json GraphToJson(const CauseEffectGraph& graph);
json TokensToJson(const ParsedSentence& sentence);

// CoNLL-U rows for stored dependency edges.
std::string DependenciesToConllu(const ParsedSentence& sentence);

}  // namespace ceglearn::internal

#endif  // CEGLEARN_SRC_JSON_CODEC_H_
