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
#include "ceglearn/service.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "json_codec.h"

namespace ceglearn {

namespace {

using internal::json;

class RequestError : public std::runtime_error {
 public:
  RequestError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

ServiceResponse Reply(int status, const json& doc) {
  return {status, doc.dump() + "\n"};
}

ServiceResponse ErrorReply(int status, std::string_view code,
                           std::string_view message) {
  return Reply(status, {{"api_version", kServiceApiVersion},
                        {"error", code},
                        {"message", message}});
}

json ParseObject(std::string_view body, bool allow_empty) {
  if (allow_empty && NormalizeWhitespace(body).empty()) return json::object();
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw RequestError(400, "malformed_json", e.what());
  }
  if (!doc.is_object()) {
    throw RequestError(400, "schema", "request body must be a JSON object");
  }
  return doc;
}

// Runs a decoder, mapping schema failures to 400.
template <typename F>
auto Decode(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw RequestError(400, "schema", e.what());
  } catch (const std::invalid_argument& e) {
    throw RequestError(400, "schema", e.what());
  }
}

void ExpectRequest(const json& doc,
                   std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional) {
  Decode([&] {
    internal::ExpectFields(doc, "request", required, optional);
    return 0;
  });
}

// Sentence records share the corpus line schema; label and spans, if
// present, are ignored.
ParsedSentence SentenceFromJson(const json& doc) {
  const json& record = doc.at("sentence");
  return Decode([&] {
    internal::ExpectFields(record, "sentence", {"id", "ptb"},
                           {"text", "conllu", "label", "cause_span",
                            "effect_span"});
    const std::string id = internal::StringField(record, "id", "sentence");
    if (id.empty()) throw std::invalid_argument("sentence.id is empty");
    ParsedSentence s;
    try {
      s = ParseBracketedTree(internal::StringField(record, "ptb", "sentence"), id);
      if (record.contains("conllu")) {
        s.deps = ParseDependencies(
            internal::StringField(record, "conllu", "sentence"),
            s.tokens.size());
      }
    } catch (const std::runtime_error& e) {
      throw std::invalid_argument(std::string("sentence: ") + e.what());
    }
    s.text = record.contains("text")
                 ? internal::StringField(record, "text", "sentence")
                 : Detokenize(s.tokens);
    if (auto err = ValidateSentence(s); !err.empty()) {
      throw std::invalid_argument("sentence: " + err);
    }
    return s;
  });
}

void CheckRevision(const json& doc, std::uint64_t current) {
  if (!doc.contains("revision")) return;
  const std::uint64_t claimed =
      Decode([&] { return internal::UintField(doc, "revision", "request"); });
  if (claimed != current) {
    throw RequestError(409, "stale_revision",
                       "request is based on revision " +
                           std::to_string(claimed) + " but the store is at " +
                           std::to_string(current));
  }
}

json TrainReply(const TrainResult& r, std::uint64_t revision) {
  const Flag flag = FlagFor(r.outcome);
  return {{"api_version", kServiceApiVersion},
          {"revision", revision},
          {"outcome", TrainOutcomeName(r.outcome)},
          {"flag", FlagName(flag)},
          {"pattern_id", r.pattern_id ? json(*r.pattern_id) : json(nullptr)},
          {"specified", r.specified},
          {"detail", r.detail},
          {"mutated", r.mutated}};
}

}  // namespace

AnnotationService::AnnotationService(EngineState initial,
                                     std::filesystem::path store_path)
    : store_path_(std::move(store_path)) {
  current_.state = std::make_shared<const EngineState>(std::move(initial));
}

AnnotationService::Snapshot AnnotationService::Current() const {
  std::lock_guard lock(snapshot_mu_);
  return current_;
}

void AnnotationService::Publish(Snapshot next) {
  std::lock_guard lock(snapshot_mu_);
  current_ = std::move(next);
}

std::uint64_t AnnotationService::revision() const { return Current().revision; }

std::shared_ptr<const EngineState> AnnotationService::snapshot() const {
  return Current().state;
}

FlagCounts AnnotationService::session_counts() const { return Current().counts; }

ServiceResponse AnnotationService::Handle(std::string_view method,
                                          std::string_view path,
                                          std::string_view body) {
  try {
    auto is = [&](std::string_view m, std::string_view p) {
      if (path != p) return false;
      if (method != m) {
        throw RequestError(405, "method_not_allowed",
                           std::string(p) + " expects " + std::string(m));
      }
      return true;
    };
    if (is("POST", "/analyze")) return Analyze(body);
    if (is("POST", "/correct")) return Correct(body);
    if (is("POST", "/noncausal")) return Noncausal(body);
    if (is("GET", "/patterns")) return Patterns();
    if (is("GET", "/stats")) return Stats();
    if (is("POST", "/store/save")) return SaveStoreFile(body);
    if (is("POST", "/store/load")) return LoadStoreFile(body);
    constexpr std::string_view kPatternPrefix = "/patterns/";
    if (path.starts_with(kPatternPrefix)) {
      if (method != "GET") {
        throw RequestError(405, "method_not_allowed", "/patterns/{id} expects GET");
      }
      return PatternById(path.substr(kPatternPrefix.size()));
    }
    return ErrorReply(404, "not_found", "no endpoint " + std::string(path));
  } catch (const RequestError& e) {
    return ErrorReply(e.status(), e.code(), e.what());
  } catch (const std::exception& e) {
    return ErrorReply(500, "internal", e.what());
  }
}

ServiceResponse AnnotationService::Analyze(std::string_view body) {
  const json doc = ParseObject(body, false);
  ExpectRequest(doc, {"sentence"}, {"revision"});
  const ParsedSentence sentence = SentenceFromJson(doc);
  const Snapshot snap = Current();
  const DetectionResult detected = Test(*snap.state, sentence);
  return Reply(
      200,
      {{"api_version", kServiceApiVersion},
       {"revision", snap.revision},
       {"matched", detected.matched_pattern_id.has_value()},
       {"pattern_id", detected.matched_pattern_id
                          ? json(*detected.matched_pattern_id)
                          : json(nullptr)},
       {"ceg", detected.ceg ? internal::GraphToJson(*detected.ceg) : json(nullptr)},
       {"failure", detected.failure ? json(detected.failure->Describe())
                                    : json(nullptr)},
       {"tokens", internal::TokensToJson(sentence)}});
}

ServiceResponse AnnotationService::Correct(std::string_view body) {
  const json doc = ParseObject(body, false);
  ExpectRequest(doc, {"sentence", "cause_span", "effect_span"}, {"revision"});
  const ParsedSentence sentence = SentenceFromJson(doc);
  const CauseEffectGraph gold = Decode([&] {
    return MakeGraph(sentence, internal::SpanFromJson(doc.at("cause_span"), "cause_span"),
                     internal::SpanFromJson(doc.at("effect_span"), "effect_span"));
  });

  std::lock_guard writer(writer_mu_);
  Snapshot next = Current();
  CheckRevision(doc, next.revision);
  EngineState state = *next.state;
  TrainResult result;
  try {
    result = TrainCausal(state, sentence, gold);
  } catch (const SentenceConflictError& e) {
    throw RequestError(409, "sentence_conflict", e.what());
  } catch (const std::invalid_argument& e) {
    throw RequestError(400, "schema", e.what());
  }
  ++next.counts[FlagFor(result.outcome)];
  ++next.counts.n_c;
  if (result.mutated) {
    next.state = std::make_shared<const EngineState>(std::move(state));
    ++next.revision;
  }
  const std::uint64_t revision = next.revision;
  Publish(std::move(next));
  return Reply(200, TrainReply(result, revision));
}

ServiceResponse AnnotationService::Noncausal(std::string_view body) {
  const json doc = ParseObject(body, false);
  ExpectRequest(doc, {"sentence"}, {"revision"});
  const ParsedSentence sentence = SentenceFromJson(doc);

  std::lock_guard writer(writer_mu_);
  Snapshot next = Current();
  CheckRevision(doc, next.revision);
  EngineState state = *next.state;
  TrainResult result;
  try {
    result = TrainNoncausal(state, sentence);
  } catch (const SentenceConflictError& e) {
    throw RequestError(409, "sentence_conflict", e.what());
  } catch (const std::invalid_argument& e) {
    throw RequestError(400, "schema", e.what());
  }
  ++next.counts[FlagFor(result.outcome)];
  if (result.mutated) {
    next.state = std::make_shared<const EngineState>(std::move(state));
    ++next.revision;
  }
  const std::uint64_t revision = next.revision;
  Publish(std::move(next));
  return Reply(200, TrainReply(result, revision));
}

ServiceResponse AnnotationService::Patterns() const {
  const Snapshot snap = Current();
  json patterns = json::array();
  for (const auto& p : snap.state->patterns) {
    patterns.push_back(internal::PatternToJson(p));
  }
  return Reply(200, {{"api_version", kServiceApiVersion},
                     {"revision", snap.revision},
                     {"patterns", std::move(patterns)}});
}

ServiceResponse AnnotationService::PatternById(std::string_view id) const {
  PatternId value = 0;
  const auto [ptr, ec] = std::from_chars(id.data(), id.data() + id.size(), value);
  if (id.empty() || ec != std::errc() || ptr != id.data() + id.size()) {
    throw RequestError(400, "schema", "pattern id must be an unsigned integer");
  }
  const Snapshot snap = Current();
  const Pattern* p = snap.state->FindPattern(value);
  if (!p) {
    throw RequestError(404, "not_found", "no pattern " + std::to_string(value));
  }
  return Reply(200, {{"api_version", kServiceApiVersion},
                     {"revision", snap.revision},
                     {"pattern", internal::PatternToJson(*p)}});
}

ServiceResponse AnnotationService::Stats() const {
  const Snapshot snap = Current();
  json flags = json::object();
  for (Flag f : kAllFlags) flags[std::string(FlagName(f))] = snap.counts[f];
  return Reply(200, {{"api_version", kServiceApiVersion},
                     {"revision", snap.revision},
                     {"flags", std::move(flags)},
                     {"total", snap.counts.total()},
                     {"causal_corrections", snap.counts.n_c},
                     {"patterns", snap.state->patterns.size()},
                     {"noncausal", snap.state->noncausal.size()},
                     {"sentences", snap.state->corpus.size()},
                     {"conflicts", snap.state->conflicts.size()}});
}

std::filesystem::path AnnotationService::ResolvePath(std::string_view body) const {
  const json doc = ParseObject(body, true);
  ExpectRequest(doc, {}, {"path", "revision"});
  if (doc.contains("path")) {
    return Decode([&] { return internal::StringField(doc, "path", "request"); });
  }
  if (store_path_.empty()) {
    throw RequestError(400, "schema", "no store path configured; pass \"path\"");
  }
  return store_path_;
}

ServiceResponse AnnotationService::SaveStoreFile(std::string_view body) {
  const std::filesystem::path path = ResolvePath(body);
  const Snapshot snap = Current();
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << SaveStore(*snap.state);
    if (!out) {
      throw RequestError(500, "io", "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw RequestError(500, "io", "cannot write " + path.string());
  return Reply(200, {{"api_version", kServiceApiVersion},
                     {"revision", snap.revision},
                     {"path", path.string()}});
}

ServiceResponse AnnotationService::LoadStoreFile(std::string_view body) {
  const std::filesystem::path path = ResolvePath(body);
  const json doc = ParseObject(body, true);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RequestError(404, "not_found", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  EngineState loaded;
  try {
    loaded = LoadStore(buffer.str());
  } catch (const StoreError& e) {
    throw RequestError(400, "invalid_store", e.what());
  }

  std::lock_guard writer(writer_mu_);
  Snapshot next = Current();
  CheckRevision(doc, next.revision);
  next.state = std::make_shared<const EngineState>(std::move(loaded));
  ++next.revision;
  const std::uint64_t revision = next.revision;
  const std::size_t patterns = next.state->patterns.size();
  Publish(std::move(next));
  return Reply(200, {{"api_version", kServiceApiVersion},
                     {"revision", revision},
                     {"path", path.string()},
                     {"patterns", patterns}});
}

}  // namespace ceglearn
