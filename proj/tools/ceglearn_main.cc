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
// ceglearn: evaluate, train, test and serve.
//
//   ceglearn evaluate --rq1 --corpus data/corpus --seeds 1..10 --out report/
//   ceglearn train --store store.json --input new.jsonl
//   ceglearn test --store store.json --input probe.jsonl
//   ceglearn serve --store store.json --listen 127.0.0.1:8080

#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ceglearn/corpus.h"
#include "ceglearn/engine.h"
#include "ceglearn/harness.h"
#include "ceglearn/service.h"
#include "http_frontend.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteFile(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

// An absent store file is an empty engine.
ceglearn::EngineState OpenStore(const fs::path& path) {
  if (!fs::exists(path)) return {};
  return ceglearn::LoadStore(ReadFile(path));
}

std::string SpanText(const ceglearn::Phrase& p) {
  std::ostringstream out;
  out << '[' << p.span.begin << ',' << p.span.end << ") \"" << p.text << '"';
  return out.str();
}

struct EvaluateOptions {
  bool rq1 = false;
  bool rq2 = false;
  std::string corpus;
  std::string seeds = "1..10";
  std::string out;
  bool strict = false;
  bool check = false;
};

int Evaluate(const EvaluateOptions& opts) {
  const std::vector<std::uint64_t> seeds = ceglearn::ParseSeedList(opts.seeds);
  ceglearn::LoadOptions load;
  load.strict = opts.strict;
  const std::vector<ceglearn::Artifact> corpus =
      fs::is_directory(opts.corpus)
          ? ceglearn::LoadCorpusDirectory(opts.corpus, load)
          : std::vector<ceglearn::Artifact>{ceglearn::LoadArtifact(opts.corpus, load)};
  if (corpus.empty()) throw UsageError("no *.jsonl artifacts in " + opts.corpus);
  if (opts.rq2 && corpus.size() < 2) {
    throw UsageError("--rq2 needs at least two artifacts, found " +
                     std::to_string(corpus.size()));
  }

  std::size_t violations = 0;
  ceglearn::StepObserver observer;
  if (opts.check) {
    observer = [&](const ceglearn::EngineState& state, const ceglearn::LogEntry&) {
      for (const auto& v : ceglearn::CheckPrinciples(state)) {
        ++violations;
        std::cerr << "principle violation: " << v.Describe() << '\n';
      }
    };
  }
  const ceglearn::ExperimentReport report =
      opts.rq1 ? ceglearn::RunRq1(corpus, seeds, observer)
               : ceglearn::RunRq2(corpus, seeds, observer);

  const fs::path out(opts.out);
  WriteFile(out / (report.kind + "_runs.csv"), ceglearn::ToCsv(report));
  WriteFile(out / (report.kind + "_report.json"), ceglearn::ToJson(report));

  std::cout << "artifact\tn\tn_c\ttcdr\talcdr\trecr\tprecision\trecall\tf1\n";
  std::cout.setf(std::ios::fixed);
  std::cout.precision(4);
  for (const auto& a : report.artifacts) {
    std::cout << a.artifact << '\t' << a.n << '\t' << a.n_c << '\t' << a.mean.tcdr
              << '\t' << a.mean.alcdr << '\t' << a.mean.recr << '\t'
              << a.prf.precision << '\t' << a.prf.recall << '\t' << a.prf.f1
              << '\n';
  }
  std::cout << "overall\t\t\t\t\t\t" << report.overall.precision << '\t'
            << report.overall.recall << '\t' << report.overall.f1 << '\n';
  std::cout << "wrote " << (out / (report.kind + "_runs.csv")).string() << " and "
            << (out / (report.kind + "_report.json")).string() << '\n';
  if (violations) {
    std::cerr << violations << " principle violations\n";
    return kExitRuntime;
  }
  return 0;
}

int Train(const std::string& store_path, const std::string& input) {
  ceglearn::LoadOptions strict;
  strict.strict = true;
  // Every record is validated before the store is touched.
  const ceglearn::Artifact artifact = ceglearn::LoadArtifact(input, strict);
  ceglearn::EngineState state = OpenStore(store_path);
  for (const auto& rec : artifact.records) {
    const ceglearn::TrainResult r =
        rec.causal() ? ceglearn::TrainCausal(state, *rec.sentence, *rec.gold)
                     : ceglearn::TrainNoncausal(state, *rec.sentence);
    std::cout << "id=" << rec.id << " outcome=" << ceglearn::TrainOutcomeName(r.outcome)
              << " flag=" << ceglearn::FlagName(ceglearn::FlagFor(r.outcome));
    if (r.pattern_id) std::cout << " pattern=" << *r.pattern_id;
    if (!r.specified.empty()) {
      std::cout << " specified=";
      for (std::size_t i = 0; i < r.specified.size(); ++i) {
        std::cout << (i ? "," : "") << r.specified[i];
      }
    }
    if (!r.detail.empty()) std::cout << " detail=\"" << r.detail << '"';
    std::cout << '\n';
  }
  WriteFile(store_path, ceglearn::SaveStore(state));
  return 0;
}

int TestSentences(const std::string& store_path, const std::string& input) {
  const ceglearn::Artifact artifact = ceglearn::LoadArtifact(input);
  if (!fs::exists(store_path)) throw std::runtime_error("no store at " + store_path);
  const ceglearn::EngineState state = OpenStore(store_path);
  for (const auto& rec : artifact.records) {
    std::cout << "id=" << rec.id;
    if (!rec.processable()) {
      std::cout << " unprocessable=\"" << rec.parse_error << "\"\n";
      continue;
    }
    const ceglearn::DetectionResult d = ceglearn::Test(state, *rec.sentence);
    if (!d.matched_pattern_id) {
      std::cout << " match=none\n";
    } else if (d.ceg) {
      std::cout << " pattern=" << *d.matched_pattern_id
                << " cause=" << SpanText(d.ceg->cause)
                << " effect=" << SpanText(d.ceg->effect) << '\n';
    } else {
      std::cout << " pattern=" << *d.matched_pattern_id << " failure=\""
                << d.failure->Describe() << "\"\n";
    }
  }
  return 0;
}

ceglearn::HttpFrontend* g_frontend = nullptr;

void OnSignal(int) {
  if (g_frontend) g_frontend->Stop();
}

int Serve(const std::string& store_path, const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw UsageError("--listen expects host:port");
  const std::string host = listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(listen.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("bad port in --listen " + listen);
  }
  ceglearn::AnnotationService service(
      store_path.empty() ? ceglearn::EngineState{} : OpenStore(store_path),
      store_path);
  ceglearn::HttpFrontend frontend(service);
  const int bound = frontend.Bind(host, port);
  if (bound < 0) throw std::runtime_error("cannot listen on " + listen);
  g_frontend = &frontend;
  std::signal(SIGINT, OnSignal);
  std::signal(SIGTERM, OnSignal);
  std::cout << "listening on " << host << ':' << bound << std::endl;
  frontend.Run();
  g_frontend = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cause-effect pattern learning from annotated requirements"};
  app.require_subcommand(1);

  EvaluateOptions eval;
  auto* evaluate = app.add_subcommand("evaluate", "Run a seeded experiment");
  auto* rq1 = evaluate->add_flag("--rq1", eval.rq1, "Each artifact on a fresh engine");
  auto* rq2 = evaluate->add_flag("--rq2", eval.rq2,
                                 "Each artifact after pre-training on the others");
  rq1->excludes(rq2);
  evaluate->add_option("--corpus", eval.corpus, "Artifact directory or .jsonl file")
      ->required();
  evaluate->add_option("--seeds", eval.seeds, "Seed list, e.g. 1..10 or 1,4,9")
      ->capture_default_str();
  evaluate->add_option("--out", eval.out, "Report directory")->required();
  evaluate->add_flag("--strict", eval.strict, "Fail on records that do not parse");
  evaluate->add_flag("--check-principles", eval.check,
                     "Verify the maintenance principles after every step");

  const char* env_store = std::getenv("CEGLEARN_STORE");
  std::string store_path = env_store ? env_store : "";
  std::string input;
  std::string listen = "127.0.0.1:8080";

  auto* train = app.add_subcommand("train", "Train the store with labelled records");
  auto* test = app.add_subcommand("test", "Detect cause and effect with the store");
  auto* serve = app.add_subcommand("serve", "Run the annotation service");
  for (auto* sub : {train, test, serve}) {
    sub->add_option("--store", store_path, "Store file (env CEGLEARN_STORE)");
  }
  for (auto* sub : {train, test}) {
    sub->add_option("--input", input, "Records in artifact .jsonl format")
        ->required()
        ->check(CLI::ExistingFile);
  }
  serve->add_option("--listen", listen, "host:port")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (evaluate->parsed()) {
      if (!eval.rq1 && !eval.rq2) throw UsageError("evaluate needs --rq1 or --rq2");
      return Evaluate(eval);
    }
    if ((train->parsed() || test->parsed()) && store_path.empty()) {
      throw UsageError("--store or CEGLEARN_STORE is required");
    }
    if (train->parsed()) return Train(store_path, input);
    if (test->parsed()) return TestSentences(store_path, input);
    if (serve->parsed()) return Serve(store_path, listen);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
