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

#include <map>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "ceglearn/corpus.h"
#include "ceglearn/signature.h"

namespace ceglearn {
namespace {

std::vector<ParsedSentence> Sentences() {
  std::vector<ParsedSentence> out;
  for (const auto& a : LoadCorpusDirectory(CEGLEARN_DATA_DIR "/corpus")) {
    for (const auto& r : a.records) {
      if (r.sentence) out.push_back(*r.sentence);
    }
  }
  return out;
}

void BM_IsCompliant(benchmark::State& state) {
  const auto sentences = Sentences();
  std::vector<Signature> signatures;
  for (const auto& s : sentences) {
    signatures.push_back(Signature::FromParts({{TreePath{}, "S"}}, {}));
    std::map<TreePath, std::string> nodes{{TreePath{}, s.tree.label}};
    for (std::size_t c = 0; c < s.tree.children.size() && c < 3; ++c) {
      nodes.emplace(TreePath{c}, s.tree.children[c].label);
    }
    signatures.push_back(Signature::FromParts(nodes, {}));
  }
  std::size_t i = 0, compliant = 0;
  for (auto _ : state) {
    const Signature& sig = signatures[i % signatures.size()];
    const ParsedSentence& s = sentences[(i * 7) % sentences.size()];
    compliant += IsCompliant(sig, s);
    ++i;
  }
  benchmark::DoNotOptimize(compliant);
}
BENCHMARK(BM_IsCompliant);

}  // namespace
}  // namespace ceglearn
