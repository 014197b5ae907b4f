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

// Transport-independent annotation service. Requests and responses are JSON
// documents; see docs/service-api.md for the payload schemas.

#ifndef CEGLEARN_SERVICE_H_
#define CEGLEARN_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "ceglearn/engine.h"
#include "ceglearn/harness.h"

namespace ceglearn {

inline constexpr int kServiceApiVersion = 1;

struct ServiceResponse {
  int status = 200;
  std::string body;  // JSON document
};

class AnnotationService {
 public:
  // `store_path` is the default target of /store/save and /store/load; it
  // may be empty, in which case those requests must name a path.
  explicit AnnotationService(EngineState initial = {},
                             std::filesystem::path store_path = {});

  AnnotationService(const AnnotationService&) = delete;
  AnnotationService& operator=(const AnnotationService&) = delete;

  // Dispatches one request. Safe to call from several threads; mutations
  // are applied one at a time against the latest snapshot.
  ServiceResponse Handle(std::string_view method, std::string_view path,
                         std::string_view body);

  std::uint64_t revision() const;
  std::shared_ptr<const EngineState> snapshot() const;
  FlagCounts session_counts() const;

 private:
  struct Snapshot {
    std::shared_ptr<const EngineState> state;
    std::uint64_t revision = 0;
    FlagCounts counts;
  };

  Snapshot Current() const;
  void Publish(Snapshot next);

  ServiceResponse Analyze(std::string_view body);
  ServiceResponse Correct(std::string_view body);
  ServiceResponse Noncausal(std::string_view body);
  ServiceResponse Patterns() const;
  ServiceResponse PatternById(std::string_view id) const;
  ServiceResponse Stats() const;
  ServiceResponse SaveStoreFile(std::string_view body);
  ServiceResponse LoadStoreFile(std::string_view body);

  std::filesystem::path ResolvePath(std::string_view body) const;

  const std::filesystem::path store_path_;
  mutable std::mutex snapshot_mu_;  // guards current_
  std::mutex writer_mu_;            // serializes mutations
  Snapshot current_;
};

}  // namespace ceglearn

#endif  // CEGLEARN_SERVICE_H_
