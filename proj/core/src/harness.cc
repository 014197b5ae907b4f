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

#include "ceglearn/harness.h"

#include <charconv>
#include <cstdio>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

#include "json_codec.h"

namespace ceglearn {

namespace {

using internal::json;

std::uint64_t BoundedDraw(std::mt19937_64& rng, std::uint64_t range) {
  // Reject the low 2^64 mod range values so every residue is equally likely.
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % range;
  }
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string Fixed(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

json MeasuresToJson(const Measures& m) {
  return {{"tcdr", m.tcdr}, {"alcdr", m.alcdr}, {"recr", m.recr}};
}

json PrfToJson(const Prf& p) {
  return {{"precision", p.precision},
          {"recall", p.recall},
          {"f1", p.f1},
          {"degenerate", p.degenerate}};
}

void Summarize(ExperimentReport& report, std::span<const Artifact> corpus) {
  const std::size_t per_artifact = report.seeds.size();
  for (std::size_t a = 0; a < corpus.size(); ++a) {
    const std::span<const RunReport> runs(report.runs.data() + a * per_artifact,
                                          per_artifact);
    ArtifactSummary summary;
    summary.artifact = corpus[a].name;
    summary.n = corpus[a].size();
    summary.n_c = corpus[a].causal_count();
    for (const auto& run : runs) {
      if (!run.measures) continue;
      ++summary.runs;
      summary.mean.tcdr += run.measures->tcdr;
      summary.mean.alcdr += run.measures->alcdr;
      summary.mean.recr += run.measures->recr;
    }
    if (summary.runs > 0) {
      const double k = static_cast<double>(summary.runs);
      summary.mean.tcdr /= k;
      summary.mean.alcdr /= k;
      summary.mean.recr /= k;
    }
    summary.prf = AggregatePrf(runs);
    report.artifacts.push_back(std::move(summary));
  }
  report.overall = AggregatePrf(report.runs);
}

}  // namespace

std::string_view FlagName(Flag flag) {
  switch (flag) {
    case Flag::kRecPlus: return "rec+";
    case Flag::kDiscPlus: return "disc+";
    case Flag::kCreaPlus: return "crea+";
    case Flag::kCreaMinus: return "crea-";
    case Flag::kSpecPlus: return "spec+";
    case Flag::kSpecMinus: return "spec-";
  }
  return "?";
}

std::optional<Flag> FlagFromName(std::string_view name) {
  for (Flag f : kAllFlags) {
    if (FlagName(f) == name) return f;
  }
  return std::nullopt;
}

Flag FlagFor(TrainOutcome outcome) {
  switch (outcome) {
    case TrainOutcome::kAlreadyCovered: return Flag::kRecPlus;
    case TrainOutcome::kCreated: return Flag::kCreaPlus;
    case TrainOutcome::kCreationFailed: return Flag::kCreaMinus;
    case TrainOutcome::kSpecifiedAndCreated: return Flag::kSpecPlus;
    case TrainOutcome::kSpecificationFailed: return Flag::kSpecMinus;
    case TrainOutcome::kDiscarded: return Flag::kDiscPlus;
    case TrainOutcome::kSpecified: return Flag::kSpecPlus;
  }
  return Flag::kSpecMinus;
}

std::size_t FlagCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Measures ComputeMeasures(const FlagCounts& c) {
  const std::size_t total = c.total();
  if (total == 0) {
    throw std::domain_error("measures are undefined without any flags");
  }
  Measures m;
  m.tcdr = Ratio(c[Flag::kRecPlus] + c[Flag::kDiscPlus], total);
  m.alcdr = Ratio(c[Flag::kRecPlus] + c[Flag::kDiscPlus] + c[Flag::kCreaPlus] +
                      c[Flag::kSpecPlus],
                  total);
  m.recr = Ratio(c[Flag::kRecPlus], c.n_c);
  return m;
}

std::vector<std::size_t> SeededPermutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(BoundedDraw(rng, i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return SplitMix64(seed ^ h);
}

RunReport FullTrain(EngineState& engine, const Artifact& artifact,
                    std::uint64_t seed, const StepObserver& observer) {
  RunReport report;
  report.artifact = artifact.name;
  report.seed = seed;
  report.counts.n_c = artifact.causal_count();

  for (const std::size_t index : SeededPermutation(artifact.size(), seed)) {
    const ArtifactRecord& rec = artifact.records[index];
    report.ordering.push_back(rec.id);
    LogEntry entry;
    entry.record_id = rec.id;
    if (!rec.processable()) {
      ++report.counts.n_unprocessable;
    } else {
      ParsedSentence sentence = *rec.sentence;
      sentence.id = artifact.name + "/" + rec.id;
      const TrainResult result = rec.causal()
                                     ? TrainCausal(engine, sentence, *rec.gold)
                                     : TrainNoncausal(engine, sentence);
      entry.outcome = result.outcome;
      entry.flag = FlagFor(result.outcome);
      ++report.counts[*entry.flag];
    }
    if (observer) observer(engine, entry);
    report.log.push_back(std::move(entry));
  }
  if (report.counts.total() > 0) report.measures = ComputeMeasures(report.counts);
  return report;
}

Prf AggregatePrf(std::span<const RunReport> reports) {
  std::size_t rec = 0, n_c = 0, spec = 0;
  for (const auto& r : reports) {
    rec += r.counts[Flag::kRecPlus];
    n_c += r.counts.n_c;
    spec += r.counts[Flag::kSpecPlus] + r.counts[Flag::kSpecMinus];
  }
  Prf out;
  out.degenerate = n_c == 0 || rec + spec == 0;
  out.recall = Ratio(rec, n_c);
  out.precision = Ratio(rec, rec + spec);
  const double sum = out.precision + out.recall;
  if (sum > 0) {
    out.f1 = 2 * out.precision * out.recall / sum;
  } else {
    out.degenerate = true;
  }
  return out;
}

ExperimentReport RunRq1(std::span<const Artifact> corpus,
                        std::span<const std::uint64_t> seeds,
                        const StepObserver& observer) {
  if (corpus.empty() || seeds.empty()) {
    throw std::invalid_argument("rq1 needs at least one artifact and one seed");
  }
  ExperimentReport report;
  report.kind = "rq1";
  report.seeds.assign(seeds.begin(), seeds.end());
  for (const auto& artifact : corpus) {
    for (const std::uint64_t seed : seeds) {
      EngineState engine;
      report.runs.push_back(FullTrain(engine, artifact, seed, observer));
    }
  }
  Summarize(report, corpus);
  return report;
}

ExperimentReport RunRq2(std::span<const Artifact> corpus,
                        std::span<const std::uint64_t> seeds,
                        const StepObserver& observer) {
  if (corpus.size() < 2) {
    throw std::invalid_argument("rq2 needs at least two artifacts");
  }
  if (seeds.empty()) throw std::invalid_argument("rq2 needs at least one seed");
  ExperimentReport report;
  report.kind = "rq2";
  report.seeds.assign(seeds.begin(), seeds.end());
  for (std::size_t target = 0; target < corpus.size(); ++target) {
    for (const std::uint64_t seed : seeds) {
      EngineState engine;
      for (std::size_t other = 0; other < corpus.size(); ++other) {
        if (other == target) continue;
        FullTrain(engine, corpus[other], DeriveSeed(seed, corpus[other].name),
                  observer);
      }
      report.runs.push_back(FullTrain(engine, corpus[target], seed, observer));
    }
  }
  Summarize(report, corpus);
  return report;
}

std::string ToCsv(const ExperimentReport& report) {
  std::string out =
      "artifact,seed,n,n_c,n_unprocessable,rec+,disc+,crea+,crea-,spec+,spec-,"
      "tcdr,alcdr,recr\n";
  for (const auto& run : report.runs) {
    out += run.artifact + ',' + std::to_string(run.seed) + ',' +
           std::to_string(run.log.size()) + ',' + std::to_string(run.counts.n_c) +
           ',' + std::to_string(run.counts.n_unprocessable);
    for (Flag f : kAllFlags) out += ',' + std::to_string(run.counts[f]);
    if (run.measures) {
      out += ',' + Fixed(run.measures->tcdr) + ',' + Fixed(run.measures->alcdr) +
             ',' + Fixed(run.measures->recr);
    } else {
      out += ",,,";
    }
    out += '\n';
  }
  return out;
}

std::string ToJson(const ExperimentReport& report) {
  json artifacts = json::array();
  for (const auto& a : report.artifacts) {
    artifacts.push_back({{"artifact", a.artifact},
                         {"n", a.n},
                         {"n_c", a.n_c},
                         {"runs", a.runs},
                         {"mean", MeasuresToJson(a.mean)},
                         {"prf", PrfToJson(a.prf)}});
  }
  json runs = json::array();
  for (const auto& run : report.runs) {
    json flags = json::object();
    for (Flag f : kAllFlags) flags[std::string(FlagName(f))] = run.counts[f];
    json log = json::array();
    for (const auto& e : run.log) {
      log.push_back({{"id", e.record_id},
                     {"flag", e.flag ? json(FlagName(*e.flag)) : json(nullptr)}});
    }
    runs.push_back({{"artifact", run.artifact},
                    {"seed", run.seed},
                    {"n", run.log.size()},
                    {"n_c", run.counts.n_c},
                    {"n_unprocessable", run.counts.n_unprocessable},
                    {"flags", flags},
                    {"measures", run.measures ? MeasuresToJson(*run.measures)
                                              : json(nullptr)},
                    {"log", log}});
  }
  json doc = {{"kind", report.kind},
              {"seeds", report.seeds},
              {"artifacts", artifacts},
              {"overall", PrfToJson(report.overall)},
              {"runs", runs}};
  return doc.dump(2) + "\n";
}

std::vector<std::uint64_t> ParseSeedList(std::string_view text) {
  auto parse = [&](std::string_view s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("bad seed '" + std::string(s) + "' in '" +
                                  std::string(text) + "'");
    }
    return v;
  };
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(start, comma - start);
    const std::size_t dots = item.find("..");
    if (dots == std::string_view::npos) {
      out.push_back(parse(item));
    } else {
      const std::uint64_t lo = parse(item.substr(0, dots));
      const std::uint64_t hi = parse(item.substr(dots + 2));
      if (hi < lo) throw std::invalid_argument("empty seed range '" + std::string(item) + "'");
      for (std::uint64_t s = lo;; ++s) {
        out.push_back(s);
        if (s == hi) break;
      }
    }
    start = comma + 1;
  }
  return out;
}

}  // namespace ceglearn
