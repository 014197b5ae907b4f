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

// Evaluation harness: replays artifacts sentence by sentence through the
// train/test decision process and tallies one flag per sentence.
//
//   causal, extraction equals gold          -> rec+
//   causal, no compliant pattern            -> crea+ / crea-
//   causal, compliant but wrong extraction  -> spec+ / spec-
//   non-causal, no compliant pattern        -> disc+
//   non-causal, compliant                   -> spec+ / spec-
//
// Records the engine cannot formalize are not flagged; they are counted as
// unprocessable.

#ifndef CEGLEARN_HARNESS_H_
#define CEGLEARN_HARNESS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ceglearn/corpus.h"
#include "ceglearn/engine.h"

namespace ceglearn {

enum class Flag { kRecPlus, kDiscPlus, kCreaPlus, kCreaMinus, kSpecPlus, kSpecMinus };

inline constexpr std::array<Flag, 6> kAllFlags = {
    Flag::kRecPlus,  Flag::kDiscPlus, Flag::kCreaPlus,
    Flag::kCreaMinus, Flag::kSpecPlus, Flag::kSpecMinus};

std::string_view FlagName(Flag flag);
std::optional<Flag> FlagFromName(std::string_view name);

// Flag for a training outcome.
Flag FlagFor(TrainOutcome outcome);

struct FlagCounts {
  std::array<std::size_t, 6> counts{};
  std::size_t n_c = 0;              // causal records of the artifact
  std::size_t n_unprocessable = 0;  // records the engine rejected

  std::size_t& operator[](Flag f) { return counts[static_cast<std::size_t>(f)]; }
  std::size_t operator[](Flag f) const {
    return counts[static_cast<std::size_t>(f)];
  }
  std::size_t total() const;  // sum over all flags
};

struct Measures {
  double tcdr = 0;   // (rec+ + disc+) / total
  double alcdr = 0;  // (rec+ + disc+ + crea+ + spec+) / total
  double recr = 0;   // rec+ / n_c, 0 when n_c == 0
};

// Throws std::domain_error when no flags were recorded.
Measures ComputeMeasures(const FlagCounts& counts);

struct LogEntry {
  std::string record_id;
  std::optional<Flag> flag;  // nullopt: unprocessable
  TrainOutcome outcome = TrainOutcome::kDiscarded;
};

struct RunReport {
  std::string artifact;
  std::uint64_t seed = 0;
  std::vector<std::string> ordering;  // record ids in replay order
  std::vector<LogEntry> log;
  FlagCounts counts;
  std::optional<Measures> measures;  // nullopt when nothing was flagged
};

// Called after every processed record with the engine state it produced.
using StepObserver = std::function<void(const EngineState&, const LogEntry&)>;

// Fisher-Yates shuffle driven by std::mt19937_64 seeded with `seed`; each
// draw is reduced to [0, i] by rejection sampling, so the permutation is
// identical on every platform.
std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed);

// Mixes a run seed with an artifact name (FNV-1a, then splitmix64).
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view name);

// Replays `artifact` in seeded random order through `engine`. Sentence ids
// are qualified as "<artifact>/<record id>" inside the engine.
RunReport FullTrain(EngineState& engine, const Artifact& artifact,
                    std::uint64_t seed, const StepObserver& observer = {});

struct Prf {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  bool degenerate = false;  // some denominator was zero
};

// recall = sum rec+ / sum n_c; precision = sum rec+ / sum (rec+ + spec+ +
// spec-); f1 is their harmonic mean. Zero denominators give 0.
Prf AggregatePrf(std::span<const RunReport> reports);

struct ArtifactSummary {
  std::string artifact;
  std::size_t n = 0;
  std::size_t n_c = 0;
  std::size_t runs = 0;
  Measures mean;  // over runs with defined measures
  Prf prf;
};

struct ExperimentReport {
  std::string kind;  // "rq1" or "rq2"
  std::vector<std::uint64_t> seeds;
  std::vector<RunReport> runs;  // artifact-major, then seed order
  std::vector<ArtifactSummary> artifacts;
  Prf overall;
};

// Every (artifact, seed) pair on a fresh engine.
ExperimentReport RunRq1(std::span<const Artifact> corpus,
                        std::span<const std::uint64_t> seeds,
                        const StepObserver& observer = {});

// Every (target, seed) pair on an engine pre-trained with all other
// artifacts in corpus order, each shuffled with DeriveSeed(seed, name).
// Only the target's log is measured. Throws std::invalid_argument with
// fewer than two artifacts.
ExperimentReport RunRq2(std::span<const Artifact> corpus,
                        std::span<const std::uint64_t> seeds,
                        const StepObserver& observer = {});

// artifact,seed,n,n_c,n_unprocessable,rec+,disc+,crea+,crea-,spec+,spec-,
// tcdr,alcdr,recr with rates printed to six decimals.
std::string ToCsv(const ExperimentReport& report);
std::string ToJson(const ExperimentReport& report);

// Parses "1..10", "3", or "1,4,9" (ranges may be mixed with commas).
std::vector<std::uint64_t> ParseSeedList(std::string_view text);

}  // namespace ceglearn

#endif  // CEGLEARN_HARNESS_H_
