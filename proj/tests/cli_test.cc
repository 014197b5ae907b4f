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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "testing/test_support.h"

namespace {

namespace fs = std::filesystem;

struct Result {
  int exit_code;
  std::string out;
};

Result Run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" CEGLEARN_CLI "' " + args + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("ceglearn_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  std::string str() const { return path_.string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string Data(const std::string& rel) {
  return (ceglearn::testing::DataDir() / rel).string();
}

std::size_t Count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

TEST_CASE("evaluate rq1 writes reports") {
  TempDir dir;
  const Result r = Run("evaluate --rq1 --corpus " + Data("corpus/if_heavy.jsonl") +
                       " --seeds 1..3 --out " + dir.str());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("if_heavy\t10\t10\t0.9000\t1.0000\t0.9000") != std::string::npos);
  const std::string csv = Slurp(dir / "rq1_runs.csv");
  CHECK(Count(csv, "\n") == 4);
  const auto report = nlohmann::json::parse(Slurp(dir / "rq1_report.json"));
  CHECK(report.at("kind") == "rq1");
  CHECK(report.at("seeds") == nlohmann::json{1, 2, 3});
}

TEST_CASE("evaluate output is reproducible") {
  TempDir a, b;
  const std::string args = " --corpus " + Data("adversarial") + " --seeds 1..4 --out ";
  REQUIRE(Run("evaluate --rq2" + args + a.str()).exit_code == 0);
  REQUIRE(Run("evaluate --rq2" + args + b.str()).exit_code == 0);
  CHECK(Slurp(a / "rq2_runs.csv") == Slurp(b / "rq2_runs.csv"));
  CHECK(Slurp(a / "rq2_report.json") == Slurp(b / "rq2_report.json"));
}

TEST_CASE("evaluate usage errors") {
  TempDir dir;
  Result r = Run("evaluate --rq2 --corpus " + Data("corpus/if_heavy.jsonl") + " --out " + dir.str());
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("usage error") != std::string::npos);
  CHECK(Run("evaluate --rq1 --rq2 --corpus " + Data("corpus") + " --out " + dir.str()).exit_code != 0);
  CHECK(Run("evaluate --corpus " + Data("corpus") + " --out " + dir.str()).exit_code == 2);
  CHECK(Run("evaluate --rq1 --corpus " + Data("corpus") + " --seeds 5..1 --out " + dir.str())
            .exit_code != 0);
  CHECK(Run("evaluate --rq1 --corpus /nonexistent --out " + dir.str()).exit_code != 0);
  CHECK(Run("bogus").exit_code != 0);
}

TEST_CASE("evaluate with principle checks") {
  TempDir dir;
  const Result r = Run("evaluate --rq1 --check-principles --corpus " +
                       Data("fixtures/mixed_small.jsonl") + " --seeds 1,2 --out " + dir.str());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("violation") == std::string::npos);
}

TEST_CASE("train then test") {
  TempDir dir;
  const std::string store = (dir / "store.json").string();
  Result r = Run("train --store " + store + " --input " + Data("corpus/if_heavy.jsonl"));
  REQUIRE(r.exit_code == 0);
  CHECK(Count(r.out, "outcome=created") == 1);
  CHECK(Count(r.out, "outcome=already-covered") == 9);
  CHECK(Count(r.out, "flag=rec+") == 9);
  CHECK(fs::exists(store));

  r = Run("test --store " + store + " --input " + Data("corpus/if_heavy.jsonl"));
  REQUIRE(r.exit_code == 0);
  CHECK(Count(r.out, " pattern=1 cause=[") == 10);

  // Training the same records again does not change the store.
  const std::string before = Slurp(store);
  r = Run("train --store " + store + " --input " + Data("corpus/if_heavy.jsonl"));
  CHECK(r.exit_code == 0);
  CHECK(Slurp(store) == before);
}

TEST_CASE("malformed training input leaves the store untouched") {
  TempDir dir;
  const std::string store = (dir / "store.json").string();
  REQUIRE(Run("train --store " + store + " --input " + Data("corpus/if_heavy.jsonl")).exit_code == 0);
  const std::string before = Slurp(store);

  const fs::path bad = dir / "bad.jsonl";
  {
    std::ifstream in(Data("corpus/alarm_panel.jsonl"));
    std::ofstream out(bad);
    std::string line;
    std::getline(in, line);
    out << line << '\n';
    out << R"j({"id":"x","label":"causal","text":"The alarm sounds.","ptb":"(S (NP (DT The) (NN alarm)) (VP (VBZ sounds)) (. .))","cause_span":[0,2],"effect_span":[2,9]})j"
        << '\n';
  }
  const Result r = Run("train --store " + store + " --input " + bad.string());
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("line 2") != std::string::npos);
  CHECK(r.out.find("id=") == std::string::npos);
  CHECK(Slurp(store) == before);
}

TEST_CASE("store path from the environment") {
  TempDir dir;
  const std::string env = "CEGLEARN_STORE='" + (dir / "env.json").string() + "'";
  REQUIRE(Run("train --input " + Data("fixtures/mixed_small.jsonl"), env).exit_code == 0);
  CHECK(fs::exists(dir / "env.json"));
  const Result r = Run("test --input " + Data("fixtures/mixed_small.jsonl"), env);
  CHECK(r.exit_code == 0);
  CHECK(Count(r.out, "id=") == 10);
  CHECK(Run("train --input " + Data("fixtures/mixed_small.jsonl"), "env -u CEGLEARN_STORE")
            .exit_code == 2);
}

TEST_CASE("test without a store fails") {
  TempDir dir;
  CHECK(Run("test --store " + (dir / "none.json").string() + " --input " +
            Data("fixtures/mixed_small.jsonl"))
            .exit_code == 1);
}

}  // namespace
