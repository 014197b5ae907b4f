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

#include "json_codec.h"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ceglearn::internal {

namespace {

std::string At(std::string_view where, std::string_view key) {
  return std::string(where) + "." + std::string(key);
}

json SelectorToJson(const Selector& selector) {
  json out = json::array();
  for (const auto& p : selector.paths) out.push_back(PathToJson(p));
  return out;
}

Selector SelectorFromJson(const json& value, Role role, std::string_view where) {
  if (!value.is_array() || value.empty()) {
    throw std::invalid_argument(std::string(where) +
                                " must be a non-empty array of paths");
  }
  Selector selector{role, {}};
  for (std::size_t i = 0; i < value.size(); ++i) {
    selector.paths.push_back(
        PathFromJson(value[i], std::string(where) + "[" + std::to_string(i) + "]"));
  }
  return selector;
}

}  // namespace

void ExpectFields(const json& object, std::string_view where,
                  std::initializer_list<std::string_view> required,
                  std::initializer_list<std::string_view> optional) {
  if (!object.is_object()) {
    throw std::invalid_argument(std::string(where) + " must be an object");
  }
  for (const auto& [key, value] : object.items()) {
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) {
      throw std::invalid_argument("unknown field " + At(where, key));
    }
  }
  for (const auto key : required) {
    if (!object.contains(key)) {
      throw std::invalid_argument("missing field " + At(where, key));
    }
  }
}

const json& Field(const json& object, std::string_view key,
                  std::string_view where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw std::invalid_argument("missing field " + At(where, key));
  }
  return *it;
}

std::string StringField(const json& object, std::string_view key,
                        std::string_view where) {
  const json& v = Field(object, key, where);
  if (!v.is_string()) {
    throw std::invalid_argument(At(where, key) + " must be a string");
  }
  return v.get<std::string>();
}

std::uint64_t UintField(const json& object, std::string_view key,
                        std::string_view where) {
  const json& v = Field(object, key, where);
  if (!v.is_number_unsigned()) {
    throw std::invalid_argument(At(where, key) +
                                " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

json PathToJson(const TreePath& path) { return json(path.steps); }

TreePath PathFromJson(const json& value, std::string_view where) {
  if (!value.is_array()) {
    throw std::invalid_argument(std::string(where) + " must be an array");
  }
  TreePath path;
  for (const auto& step : value) {
    if (!step.is_number_unsigned()) {
      throw std::invalid_argument(std::string(where) +
                                  " must hold non-negative integers");
    }
    path.steps.push_back(step.get<std::size_t>());
  }
  return path;
}

json SpanToJson(TokenSpan span) { return json::array({span.begin, span.end}); }

TokenSpan SpanFromJson(const json& value, std::string_view where) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number_unsigned() ||
      !value[1].is_number_unsigned()) {
    throw std::invalid_argument(std::string(where) +
                                " must be a [begin, end) pair of token indices");
  }
  return TokenSpan{value[0].get<std::size_t>(), value[1].get<std::size_t>()};
}

json PatternToJson(const Pattern& pattern) {
  json nodes = json::array();
  for (const auto& [path, label] : pattern.signature.nodes()) {
    nodes.push_back({{"path", PathToJson(path)}, {"label", label}});
  }
  json constraints = json::array();
  for (const auto& c : pattern.signature.constraints()) {
    constraints.push_back({{"path", PathToJson(c.path)}, {"keyword", c.keyword}});
  }
  return {
      {"id", pattern.id},
      {"signature", {{"nodes", nodes}, {"constraints", constraints}}},
      {"extractor",
       {{"cause", SelectorToJson(pattern.extractor.cause)},
        {"effect", SelectorToJson(pattern.extractor.effect)}}},
      {"accepted", pattern.accepted},
  };
}

Pattern PatternFromJson(const json& value) {
  ExpectFields(value, "pattern", {"id", "signature", "extractor", "accepted"});
  Pattern pattern;
  pattern.id = UintField(value, "id", "pattern");
  const std::string where = "pattern " + std::to_string(pattern.id);

  const json& sig = value.at("signature");
  ExpectFields(sig, where + ".signature", {"nodes", "constraints"});
  std::map<TreePath, std::string> nodes;
  if (!sig.at("nodes").is_array()) {
    throw std::invalid_argument(where + ".signature.nodes must be an array");
  }
  for (const auto& n : sig.at("nodes")) {
    ExpectFields(n, where + ".signature.nodes[]", {"path", "label"});
    TreePath path = PathFromJson(n.at("path"), where + ".signature.nodes[].path");
    if (!nodes.emplace(path, StringField(n, "label", where + ".signature.nodes[]"))
             .second) {
      throw std::invalid_argument(where + " has duplicate signature node " +
                                  path.ToString());
    }
  }
  std::vector<LexicalConstraint> constraints;
  if (!sig.at("constraints").is_array()) {
    throw std::invalid_argument(where + ".signature.constraints must be an array");
  }
  for (const auto& c : sig.at("constraints")) {
    ExpectFields(c, where + ".signature.constraints[]", {"path", "keyword"});
    constraints.push_back(
        {PathFromJson(c.at("path"), where + ".signature.constraints[].path"),
         StringField(c, "keyword", where + ".signature.constraints[]")});
  }
  pattern.signature =
      Signature::FromParts(std::move(nodes), std::move(constraints));

  const json& ex = value.at("extractor");
  ExpectFields(ex, where + ".extractor", {"cause", "effect"});
  pattern.extractor.cause =
      SelectorFromJson(ex.at("cause"), Role::kCause, where + ".extractor.cause");
  pattern.extractor.effect = SelectorFromJson(ex.at("effect"), Role::kEffect,
                                              where + ".extractor.effect");

  const json& accepted = value.at("accepted");
  if (!accepted.is_array()) {
    throw std::invalid_argument(where + ".accepted must be an array");
  }
  for (const auto& id : accepted) {
    if (!id.is_string()) {
      throw std::invalid_argument(where + ".accepted must hold strings");
    }
    pattern.accepted.push_back(id.get<std::string>());
  }
  return pattern;
}

json GraphToJson(const CauseEffectGraph& graph) {
  return {
      {"cause", {{"text", graph.cause.text}, {"span", SpanToJson(graph.cause.span)}}},
      {"effect",
       {{"text", graph.effect.text}, {"span", SpanToJson(graph.effect.span)}}},
  };
}

json TokensToJson(const ParsedSentence& sentence) {
  json out = json::array();
  for (const auto& t : sentence.tokens) {
    out.push_back({{"index", t.index}, {"text", t.text}, {"pos", t.pos}});
  }
  return out;
}

std::string DependenciesToConllu(const ParsedSentence& sentence) {
  std::string out;
  if (!sentence.deps) return out;
  for (const auto& e : *sentence.deps) {
    const Token& t = sentence.tokens.at(e.dependent);
    out += std::to_string(e.dependent + 1) + '\t' + t.text + "\t_\t" + t.pos +
           '\t' + t.pos + "\t_\t" +
           std::to_string(e.head ? *e.head + 1 : 0) + '\t' + e.relation +
           "\t_\t_\n";
  }
  return out;
}

}  // namespace ceglearn::internal
