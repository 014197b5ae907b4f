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
#include "http_frontend.h"

#include <httplib.h>

namespace ceglearn {

struct HttpFrontend::Impl {
  AnnotationService& service;
  httplib::Server server;
};

HttpFrontend::HttpFrontend(AnnotationService& service)
    : impl_(new Impl{service, {}}) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const ServiceResponse out = impl_->service.Handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
  impl_->server.Put(R"(/.*)", handler);
  impl_->server.Delete(R"(/.*)", handler);
}

HttpFrontend::~HttpFrontend() { Stop(); }

int HttpFrontend::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpFrontend::Run() { return impl_->server.listen_after_bind(); }

void HttpFrontend::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace ceglearn
