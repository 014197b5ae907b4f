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
// Binds an AnnotationService to an HTTP listener.

#ifndef CEGLEARN_TOOLS_HTTP_FRONTEND_H_
#define CEGLEARN_TOOLS_HTTP_FRONTEND_H_

#include <memory>
#include <string>

#include "ceglearn/service.h"

namespace ceglearn {

class HttpFrontend {
 public:
  explicit HttpFrontend(AnnotationService& service);
  ~HttpFrontend();

  // Returns the bound port, or -1. Port 0 picks a free port.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool Run();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ceglearn

#endif  // CEGLEARN_TOOLS_HTTP_FRONTEND_H_
