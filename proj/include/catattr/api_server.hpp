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

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "catattr/catalogue.hpp"
#include "catattr/config.hpp"
#include "catattr/evaluation.hpp"
#include "catattr/run_store.hpp"

namespace httplib {
class Server;
}

namespace catattr {

struct ApiOptions {
  std::filesystem::path runs_dir;
  /// Catalogue served by GET /v1/catalogue; runs replay against their own.
  std::filesystem::path catalogue;
  /// When set, PUT /v1/config also writes the file.
  std::optional<std::filesystem::path> config_file;
  std::optional<GroundTruth> ground_truth;
  AbstentionConfig initial_config;
};

/// Read/replay JSON API under /v1:
///   GET  /v1/config                 current config
///   PUT  /v1/config                 replace (partial objects patch the current one)
///   GET  /v1/runs                   run manifests
///   GET  /v1/runs/{id}              one manifest
///   GET  /v1/runs/{id}/decisions    stored decisions
///   POST /v1/runs/{id}/replay       re-decide under the posted config (or the current one)
///   GET  /v1/catalogue              catalogue records
class ApiServer {
 public:
  explicit ApiServer(ApiOptions options);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Binds and returns the port (an ephemeral one when `port` is 0).
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  void stop();
  void wait_until_ready() const;

  AbstentionConfig config() const;

  /// Handler logic, callable without a socket. Returns (status, body).
  std::pair<int, nlohmann::json> get_config() const;
  std::pair<int, nlohmann::json> put_config(const std::string& body);
  std::pair<int, nlohmann::json> list_runs() const;
  std::pair<int, nlohmann::json> get_run(const std::string& run_id) const;
  std::pair<int, nlohmann::json> get_decisions(const std::string& run_id) const;
  std::pair<int, nlohmann::json> replay(const std::string& run_id, const std::string& body);
  std::pair<int, nlohmann::json> get_catalogue() const;

 private:
  void routes();
  std::shared_ptr<const CatalogueIndex> run_index(const RunManifest& manifest);

  ApiOptions options_;
  RunStore store_;
  mutable std::shared_mutex config_mutex_;
  AbstentionConfig config_;
  std::mutex cache_mutex_;
  std::map<std::string, std::shared_ptr<const CatalogueIndex>> index_cache_;  // by catalogue sha256
  nlohmann::json catalogue_json_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace catattr
