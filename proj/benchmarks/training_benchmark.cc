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

#include <benchmark/benchmark.h>

#include "ceglearn/corpus.h"
#include "ceglearn/harness.h"

namespace ceglearn {
namespace {

void BM_FullTrain(benchmark::State& state) {
  const Artifact artifact =
      LoadArtifact(CEGLEARN_DATA_DIR "/corpus/alarm_panel.jsonl");
  std::uint64_t seed = 1;
  for (auto _ : state) {
    EngineState engine;
    benchmark::DoNotOptimize(FullTrain(engine, artifact, seed++));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(artifact.size()));
}
BENCHMARK(BM_FullTrain)->Unit(benchmark::kMillisecond);

void BM_Rq1Corpus(benchmark::State& state) {
  const auto corpus = LoadCorpusDirectory(CEGLEARN_DATA_DIR "/corpus");
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  for (auto _ : state) benchmark::DoNotOptimize(RunRq1(corpus, seeds));
}
BENCHMARK(BM_Rq1Corpus)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ceglearn
