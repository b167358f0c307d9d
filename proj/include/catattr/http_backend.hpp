// Copyright 2026 The catattr Authors.
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

#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "catattr/backend.hpp"

namespace catattr {

struct HttpBackendOptions {
  std::string base_url = "http://127.0.0.1:8000";
  std::string endpoint = "/v1/generate";
  std::string token_env = "CATATTR_BACKEND_TOKEN";  // bearer token read from this variable, if set
  std::chrono::milliseconds connect_timeout{5'000};
  std::chrono::milliseconds read_timeout{300'000};
  std::size_t max_in_flight = 1;
  int retries = 0;  // extra attempts for retriable failures
  BackendDescriptor descriptor{"http", true, true, false, "extracted_frames"};
};

/// Client for a locally deployed text-generation server.
///
/// POST <endpoint> with {"prompt", "media", "params"}; the reply must be a JSON
/// object with a string "text".
class HttpBackend final : public ModelBackend {
 public:
  explicit HttpBackend(HttpBackendOptions options);
  ~HttpBackend() override;

  const BackendDescriptor& descriptor() const override { return options_.descriptor; }
  std::size_t max_in_flight() const override { return options_.max_in_flight; }
  GenerationResponse generate(const GenerationRequest& request) override;

  static nlohmann::json request_body(const GenerationRequest& request);

 private:
  GenerationResponse attempt(const GenerationRequest& request, const std::string& body);

  HttpBackendOptions options_;
};

}  // namespace catattr
