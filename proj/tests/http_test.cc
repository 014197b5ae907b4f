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

#include <string>
#include <thread>

#include <doctest.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ceglearn/service.h"
#include "http_frontend.h"
#include "testing/test_support.h"

namespace ceglearn {
namespace {

using nlohmann::json;

json CorrectBody(std::string_view ptb, const std::string& id, TokenSpan cause,
                 TokenSpan effect) {
  return {{"sentence", {{"id", id}, {"ptb", std::string(ptb)}}},
          {"cause_span", {cause.begin, cause.end}},
          {"effect_span", {effect.begin, effect.end}}};
}

TEST_CASE("http frontend serves the same endpoints") {
  AnnotationService svc;
  HttpFrontend http(svc);
  const int port = http.Bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { http.Run(); });

  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/correct",
                         CorrectBody(testing::kIfDoor, "door", {1, 4}, {5, 8}).dump(),
                         "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body).at("outcome") == "created");
  CHECK(res->get_header_value("Content-Type").find("application/json") != std::string::npos);

  res = client.Get("/stats");
  REQUIRE(res);
  CHECK(json::parse(res->body).at("patterns") == 1);

  res = client.Get("/missing");
  REQUIRE(res);
  CHECK(res->status == 404);

  res = client.Post("/analyze", "[]", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);

  http.Stop();
  server.join();
}

TEST_CASE("analyze, correct, re-analyze over http") {
  AnnotationService svc;
  HttpFrontend http(svc);
  const int port = http.Bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread server([&] { http.Run(); });
  httplib::Client client("127.0.0.1", port);

  const json first = {{"sentence", {{"id", "door"}, {"ptb", std::string(testing::kIfDoor)}}}};
  auto res = client.Post("/analyze", first.dump(), "application/json");
  REQUIRE(res);
  const json analyzed = json::parse(res->body);
  CHECK(analyzed.at("matched") == false);

  // Spans chosen from the token list the service returned.
  const auto& tokens = analyzed.at("tokens");
  REQUIRE(tokens.size() == 9);
  CHECK(tokens[1].at("text") == "the");
  CHECK(tokens[3].at("text") == "opens");
  res = client.Post("/correct", CorrectBody(testing::kIfDoor, "door", {1, 4}, {5, 8}).dump(),
                    "application/json");
  REQUIRE(res);
  CHECK(json::parse(res->body).at("flag") == "crea+");

  const json second = {{"sentence", {{"id", "file"}, {"ptb", std::string(testing::kIfFile)}}}};
  res = client.Post("/analyze", second.dump(), "application/json");
  REQUIRE(res);
  const json learned = json::parse(res->body);
  CHECK(learned.at("matched") == true);
  CHECK(learned.at("ceg").at("cause").at("text") == "the file was correctly updated");
  CHECK(learned.at("ceg").at("effect").at("text") == "there is no output");

  http.Stop();
  server.join();
}

}  // namespace
}  // namespace ceglearn
