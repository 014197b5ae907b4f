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

// Annotated requirements artifacts: one JSON record per line, see
// docs/artifact-format.md.

#ifndef CEGLEARN_CORPUS_H_
#define CEGLEARN_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ceglearn/pattern.h"
#include "ceglearn/tree.h"

namespace ceglearn {

enum class Label { kCausal, kNoncausal };

struct ArtifactRecord {
  std::string id;
  std::string text;
  std::string ptb;
  std::optional<std::string> conllu;
  Label label = Label::kNoncausal;
  std::optional<TokenSpan> cause_span;
  std::optional<TokenSpan> effect_span;

  // Set when the record's parse could be formalized.
  std::optional<ParsedSentence> sentence;
  std::optional<CauseEffectGraph> gold;
  // Why the record could not be formalized; empty when `sentence` is set.
  std::string parse_error;

  bool causal() const { return label == Label::kCausal; }
  bool processable() const { return sentence.has_value(); }
};

struct Artifact {
  std::string name;
  std::vector<ArtifactRecord> records;

  std::size_t size() const { return records.size(); }  // n(a)
  std::size_t causal_count() const;                    // n_c(a)
  std::size_t unprocessable_count() const;
};

// Thrown for schema violations; carries the 1-based line number (0 when the
// error is not tied to a line).
class ArtifactError : public std::runtime_error {
 public:
  ArtifactError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }
  // The message without the line prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

struct LoadOptions {
  // When false, records whose parse is rejected (malformed bracketing, root
  // other than S, text/token mismatch, bad dependency block) are kept as
  // unprocessable instead of failing the load.
  bool strict = false;
};

// Parses one record line. Spans are validated against the parse.
ArtifactRecord ParseArtifactRecord(std::string_view line, std::size_t line_no,
                                   const LoadOptions& options = {});

Artifact ParseArtifact(std::string name, std::string_view content,
                       const LoadOptions& options = {});

// The artifact name is the file stem.
Artifact LoadArtifact(const std::filesystem::path& path,
                      const LoadOptions& options = {});

// All *.jsonl files of a directory, ordered by file name.
std::vector<Artifact> LoadCorpusDirectory(const std::filesystem::path& dir,
                                          const LoadOptions& options = {});

}  // namespace ceglearn

#endif  // CEGLEARN_CORPUS_H_
