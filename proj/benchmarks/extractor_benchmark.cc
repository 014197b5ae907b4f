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

#include <variant>
#include <vector>

#include <benchmark/benchmark.h>

#include "ceglearn/corpus.h"
#include "ceglearn/pattern.h"

namespace ceglearn {
namespace {

struct Pair {
  ParsedSentence sentence;
  CauseEffectGraph gold;
};

std::vector<Pair> GoldPairs() {
  std::vector<Pair> out;
  for (const auto& a : LoadCorpusDirectory(CEGLEARN_DATA_DIR "/corpus")) {
    for (const auto& r : a.records) {
      if (r.gold) out.push_back({*r.sentence, *r.gold});
    }
  }
  return out;
}

void BM_GenerateExtractor(benchmark::State& state) {
  const auto pairs = GoldPairs();
  std::size_t i = 0;
  for (auto _ : state) {
    const Pair& p = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(GenerateExtractor(p.sentence, p.gold));
  }
}
BENCHMARK(BM_GenerateExtractor);

void BM_ApplyExtractor(benchmark::State& state) {
  const auto pairs = GoldPairs();
  std::vector<PhraseExtractor> extractors;
  for (const auto& p : pairs) {
    extractors.push_back(std::get<PhraseExtractor>(GenerateExtractor(p.sentence, p.gold)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ % pairs.size();
    benchmark::DoNotOptimize(ApplyExtractor(extractors[k], pairs[k].sentence));
  }
}
BENCHMARK(BM_ApplyExtractor);

}  // namespace
}  // namespace ceglearn
