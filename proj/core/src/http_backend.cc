// Copyright 2026 The mxsem Authors.
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

#include "httplib.h"
#include "mxsem/qa.h"
#include "mxsem/utf8.h"

namespace mxsem {

struct HttpQaBackend::Impl {
  std::string base_path;  // endpoint path prefix without trailing '/'
  std::string host;       // scheme://host:port
  double timeout = 10.0;

  httplib::Client MakeClient() const {
    httplib::Client client(host);
    const auto secs = static_cast<time_t>(timeout);
    const auto usecs = static_cast<time_t>((timeout - secs) * 1e6);
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);
    return client;
  }
};

HttpQaBackend::HttpQaBackend(std::string endpoint, double timeout_seconds)
    : endpoint_(std::move(endpoint)), impl_(std::make_unique<Impl>()) {
  std::string rest = endpoint_;
  std::string scheme = "http://";
  if (auto p = rest.find("://"); p != std::string::npos) {
    scheme = rest.substr(0, p + 3);
    rest = rest.substr(p + 3);
  }
  const auto slash = rest.find('/');
  impl_->host = scheme + rest.substr(0, slash);
  if (slash != std::string::npos) impl_->base_path = rest.substr(slash);
  while (!impl_->base_path.empty() && impl_->base_path.back() == '/') {
    impl_->base_path.pop_back();
  }
  impl_->timeout = timeout_seconds;
}

HttpQaBackend::~HttpQaBackend() = default;

QaAnswer HttpQaBackend::Answer(const QaQuery& query) {
  httplib::Client client = impl_->MakeClient();
  const std::string body = EncodeQaRequest(query);
  const std::string path = impl_->base_path + "/v1/answer";
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto res = client.Post(path, body, "application/json");
    if (!res) {
      throw BackendError("QA endpoint " + endpoint_ + " unreachable: " +
                         httplib::to_string(res.error()));
    }
    if (res->status == 503 && attempt == 0) continue;
    if (res->status != 200) {
      throw BackendError("QA endpoint " + endpoint_ + " returned HTTP " +
                         std::to_string(res->status));
    }
    return DecodeQaResponse(res->body);
  }
  throw BackendError("QA endpoint " + endpoint_ + " unavailable (503 twice)");
}

bool HttpQaBackend::Healthy() {
  httplib::Client client = impl_->MakeClient();
  auto res = client.Get(impl_->base_path + "/v1/health");
  return res && res->status == 200 && utf8::CollapseWhitespace(res->body) == "ok";
}

}  // namespace mxsem
