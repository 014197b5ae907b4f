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

#include "ceglearn/corpus.h"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json_codec.h"

namespace ceglearn {

namespace {

using internal::json;

std::optional<TokenSpan> OptionalSpan(const json& record, std::string_view key) {
  if (!record.contains(std::string(key))) return std::nullopt;
  return internal::SpanFromJson(record.at(std::string(key)), key);
}

}  // namespace

std::size_t Artifact::causal_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [](const ArtifactRecord& r) { return r.causal(); }));
}

std::size_t Artifact::unprocessable_count() const {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [](const ArtifactRecord& r) { return !r.processable(); }));
}

ArtifactError::ArtifactError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what
                              : what),
      line_(line),
      detail_(what) {}

ArtifactRecord ParseArtifactRecord(std::string_view line, std::size_t line_no,
                                   const LoadOptions& options) {
  ArtifactRecord rec;
  try {
    const json obj = json::parse(line);
    internal::ExpectFields(obj, "record", {"id", "text", "ptb", "label"},
                           {"conllu", "cause_span", "effect_span"});
    rec.id = internal::StringField(obj, "id", "record");
    if (rec.id.empty()) throw std::invalid_argument("record.id is empty");
    rec.text = internal::StringField(obj, "text", "record");
    rec.ptb = internal::StringField(obj, "ptb", "record");
    if (obj.contains("conllu")) {
      rec.conllu = internal::StringField(obj, "conllu", "record");
    }
    const std::string label = internal::StringField(obj, "label", "record");
    if (label == "causal") {
      rec.label = Label::kCausal;
    } else if (label == "noncausal") {
      rec.label = Label::kNoncausal;
    } else {
      throw std::invalid_argument("record.label must be 'causal' or "
                                  "'noncausal', got '" + label + "'");
    }
    rec.cause_span = OptionalSpan(obj, "cause_span");
    rec.effect_span = OptionalSpan(obj, "effect_span");
  } catch (const json::exception& e) {
    throw ArtifactError(line_no, std::string("malformed JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ArtifactError(line_no, e.what());
  }

  if (rec.causal() && (!rec.cause_span || !rec.effect_span)) {
    throw ArtifactError(line_no, "causal record '" + rec.id +
                                     "' needs cause_span and effect_span");
  }
  if (!rec.causal() && (rec.cause_span || rec.effect_span)) {
    throw ArtifactError(line_no, "non-causal record '" + rec.id +
                                     "' must not carry spans");
  }

  try {
    ParsedSentence sentence = ParseBracketedTree(rec.ptb, rec.id);
    if (rec.conllu) {
      sentence.deps = ParseDependencies(*rec.conllu, sentence.tokens.size());
    }
    sentence.text = rec.text;
    if (auto err = ValidateSentence(sentence); !err.empty()) {
      throw std::runtime_error(err);
    }
    rec.sentence = std::move(sentence);
  } catch (const std::runtime_error& e) {
    if (options.strict) {
      throw ArtifactError(line_no, "record '" + rec.id + "': " + e.what());
    }
    rec.parse_error = e.what();
    return rec;
  }

  if (rec.causal()) {
    try {
      rec.gold = MakeGraph(*rec.sentence, *rec.cause_span, *rec.effect_span);
    } catch (const std::invalid_argument& e) {
      throw ArtifactError(line_no, "record '" + rec.id + "': " + e.what());
    }
  }
  return rec;
}

Artifact ParseArtifact(std::string name, std::string_view content,
                       const LoadOptions& options) {
  Artifact artifact;
  artifact.name = std::move(name);
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (NormalizeWhitespace(line).empty()) continue;
    ArtifactRecord rec = ParseArtifactRecord(line, line_no, options);
    if (!ids.insert(rec.id).second) {
      throw ArtifactError(line_no, "duplicate record id '" + rec.id + "'");
    }
    artifact.records.push_back(std::move(rec));
  }
  return artifact;
}

Artifact LoadArtifact(const std::filesystem::path& path,
                      const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArtifactError(0, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseArtifact(path.stem().string(), buffer.str(), options);
  } catch (const ArtifactError& e) {
    throw ArtifactError(e.line(), path.filename().string() + ": " + e.detail());
  }
}

std::vector<Artifact> LoadCorpusDirectory(const std::filesystem::path& dir,
                                          const LoadOptions& options) {
  if (!std::filesystem::is_directory(dir)) {
    throw ArtifactError(0, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Artifact> out;
  for (const auto& f : files) out.push_back(LoadArtifact(f, options));
  return out;
}

}  // namespace ceglearn
