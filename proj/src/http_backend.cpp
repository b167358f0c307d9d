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

#include "catattr/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>

#include "catattr/json_io.hpp"

namespace catattr {

HttpBackend::HttpBackend(HttpBackendOptions options) : options_(std::move(options)) {
  if (options_.max_in_flight == 0) options_.max_in_flight = 1;
}

HttpBackend::~HttpBackend() = default;

nlohmann::json HttpBackend::request_body(const GenerationRequest& request) {
  nlohmann::json media = {{"path", request.media.path},
                          {"modality", request.media.modality == Modality::video ? "video" : "image"}};
  if (request.media.plan) media["frame_plan"] = *request.media.plan;
  return {{"prompt", request.prompt},
          {"media", media},
          {"params", {{"max_tokens", request.params.max_tokens}, {"temperature", request.params.temperature}}}};
}

GenerationResponse HttpBackend::attempt(const GenerationRequest& request, const std::string& body) {
  // One client per call keeps concurrent generate() calls independent.
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(options_.connect_timeout));
  client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(options_.read_timeout));
  client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(options_.read_timeout));

  httplib::Headers headers;
  if (const char* token = std::getenv(options_.token_env.c_str()); token != nullptr && *token != '\0') {
    headers.emplace("Authorization", std::string("Bearer ") + token);
  }

  const auto started = std::chrono::steady_clock::now();
  auto result = client.Post(options_.endpoint, headers, body, "application/json");
  const auto latency =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);

  if (!result) {
    const auto err = result.error();
    const std::string what = "backend " + options_.descriptor.name + ": " + httplib::to_string(err);
    switch (err) {
      case httplib::Error::Connection:
      case httplib::Error::ConnectionTimeout:
      case httplib::Error::ProxyConnection:
        throw BackendError(BackendError::Kind::connection, what);
      case httplib::Error::Read:
      case httplib::Error::Write:
        throw BackendError(BackendError::Kind::timeout, what);
      default:
        throw BackendError(BackendError::Kind::protocol, what);
    }
  }

  const int status = result->status;
  if (status < 200 || status >= 300) {
    const std::string what = "backend " + options_.descriptor.name + " (slot " +
                             std::string(to_string(request.slot)) + "): HTTP " + std::to_string(status);
    const bool retriable = status >= 500 || status == 408 || status == 429;
    throw BackendError(retriable ? BackendError::Kind::server_status : BackendError::Kind::client_status, what,
                       status);
  }

  nlohmann::json reply = nlohmann::json::parse(result->body, nullptr, false);
  if (reply.is_discarded() || !reply.is_object() || !reply.contains("text") || !reply["text"].is_string()) {
    throw BackendError(BackendError::Kind::protocol,
                       "backend " + options_.descriptor.name + ": reply is not a JSON object with a string 'text'",
                       status);
  }
  return {reply["text"].get<std::string>(), options_.descriptor, latency};
}

GenerationResponse HttpBackend::generate(const GenerationRequest& request) {
  const std::string body = request_body(request).dump();
  for (int attempt_no = 0;; ++attempt_no) {
    try {
      return attempt(request, body);
    } catch (const BackendError& e) {
      if (!e.retriable() || attempt_no >= options_.retries) throw;
    }
  }
}

}  // namespace catattr
