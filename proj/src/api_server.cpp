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

#include "catattr/api_server.hpp"

#include <httplib.h>

#include "catattr/json_io.hpp"

namespace catattr {
namespace {

using nlohmann::json;
using Reply = std::pair<int, json>;

json error_body(std::string message) { return {{"error", std::move(message)}}; }

json issues_body(const std::vector<ConfigIssue>& issues) {
  json list = json::array();
  for (const auto& i : issues) list.push_back({{"parameter", i.parameter}, {"message", i.message}});
  return {{"error", "invalid config"}, {"issues", std::move(list)}};
}

Reply store_error(const RunStoreError& e) {
  return {e.kind() == RunStoreError::Kind::not_found ? 404 : 500, error_body(e.what())};
}

json summary_json(const EvaluationReport& r) {
  return {{"videos", r.videos},
          {"accepts", r.accepts},
          {"correct", r.correct},
          {"false_positives", r.false_positives},
          {"advisory_correct", r.advisory_correct},
          {"coverage", r.coverage},
          {"precision", r.precision ? json(*r.precision) : json(nullptr)}};
}

}  // namespace

ApiServer::ApiServer(ApiOptions options)
    : options_(std::move(options)), store_(options_.runs_dir), config_(options_.initial_config) {
  catalogue_json_ = json::array();
  if (!options_.catalogue.empty()) {
    for (const auto& record : load_catalogue_records(options_.catalogue)) catalogue_json_.push_back(record_to_json(record));
  }
}

ApiServer::~ApiServer() { stop(); }

AbstentionConfig ApiServer::config() const {
  std::shared_lock lock(config_mutex_);
  return config_;
}

Reply ApiServer::get_config() const { return {200, to_json(config())}; }

Reply ApiServer::put_config(const std::string& body) {
  const json doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) return {400, error_body("body is not valid JSON")};
  std::unique_lock lock(config_mutex_);
  try {
    AbstentionConfig next = config_from_json(doc, config_);
    if (options_.config_file) save_config(next, *options_.config_file);
    config_ = next;
  } catch (const ConfigError& e) {
    return {400, issues_body(e.issues())};
  }
  return {200, to_json(config_)};
}

Reply ApiServer::list_runs() const {
  try {
    json runs = json::array();
    for (const auto& m : store_.list()) {
      runs.push_back({{"run_id", m.run_id},
                      {"label", m.label},
                      {"backend", m.backend},
                      {"videos", m.videos.size()},
                      {"catalogue_entries", m.catalogue_entries},
                      {"started_at", m.started_at},
                      {"finished_at", m.finished_at}});
    }
    return {200, runs};
  } catch (const RunStoreError& e) {
    return store_error(e);
  }
}

Reply ApiServer::get_run(const std::string& run_id) const {
  try {
    return {200, manifest_to_json(store_.manifest(run_id))};
  } catch (const RunStoreError& e) {
    return store_error(e);
  }
}

Reply ApiServer::get_decisions(const std::string& run_id) const {
  try {
    const auto manifest = store_.manifest(run_id);
    const auto decisions = store_.decisions(run_id);
    const auto signals = store_.signals(run_id);
    json rows = json::array();
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      json row{{"video", decisions[i].first}, {"decision", decisions[i].second}};
      if (i < signals.size() && signals[i].video == decisions[i].first) row["signals"] = signals[i].signals;
      rows.push_back(std::move(row));
    }
    return {200, {{"run_id", manifest.run_id}, {"config", to_json(manifest.config)}, {"decisions", rows}}};
  } catch (const RunStoreError& e) {
    return store_error(e);
  }
}

std::shared_ptr<const CatalogueIndex> ApiServer::run_index(const RunManifest& manifest) {
  std::lock_guard lock(cache_mutex_);
  auto& slot = index_cache_[manifest.catalogue_sha256];
  if (!slot) slot = std::make_shared<const CatalogueIndex>(load_run_catalogue(manifest));
  return slot;
}

Reply ApiServer::replay(const std::string& run_id, const std::string& body) {
  AbstentionConfig cfg = config();
  if (!body.empty()) {
    const json doc = json::parse(body, nullptr, false);
    if (doc.is_discarded()) return {400, error_body("body is not valid JSON")};
    try {
      cfg = config_from_json(doc.contains("config") ? doc.at("config") : doc, cfg);
    } catch (const ConfigError& e) {
      return {400, issues_body(e.issues())};
    }
  }
  try {
    const RunManifest manifest = store_.manifest(run_id);
    const auto index = run_index(manifest);
    const auto decisions = replay_run(store_.signals(run_id), *index, cfg);

    std::optional<EvaluationReport> report;
    if (options_.ground_truth) {
      try {
        report = evaluate_decisions(decisions, *options_.ground_truth, cfg, manifest.backend, manifest.label);
      } catch (const EvaluationError&) {
        report.reset();
      }
    }
    json rows = json::array();
    for (std::size_t i = 0; i < decisions.size(); ++i) {
      json row{{"video", decisions[i].first}, {"decision", decisions[i].second}};
      if (report) row["verdict"] = to_string(report->per_video[i].verdict);
      rows.push_back(std::move(row));
    }
    json out{{"run_id", manifest.run_id}, {"config", to_json(cfg)}, {"decisions", std::move(rows)}};
    if (report) out["summary"] = summary_json(*report);
    return {200, out};
  } catch (const RunStoreError& e) {
    if (e.kind() == RunStoreError::Kind::catalogue_changed) return {409, error_body(e.what())};
    return store_error(e);
  }
}

Reply ApiServer::get_catalogue() const { return {200, catalogue_json_}; }

void ApiServer::routes() {
  auto send = [](httplib::Response& res, const Reply& reply) {
    res.status = reply.first;
    res.set_content(reply.second.dump(), "application/json");
  };
  server_->set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, PUT, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
  server_->Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server_->Get("/v1/config", [this, send](const httplib::Request&, httplib::Response& res) { send(res, get_config()); });
  server_->Put("/v1/config",
               [this, send](const httplib::Request& req, httplib::Response& res) { send(res, put_config(req.body)); });
  server_->Get("/v1/runs", [this, send](const httplib::Request&, httplib::Response& res) { send(res, list_runs()); });
  server_->Get(R"(/v1/runs/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_run(req.matches[1]));
  });
  server_->Get(R"(/v1/runs/([^/]+)/decisions)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_decisions(req.matches[1]));
  });
  server_->Post(R"(/v1/runs/([^/]+)/replay)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, replay(req.matches[1], req.body));
  });
  server_->Get("/v1/catalogue", [this, send](const httplib::Request&, httplib::Response& res) { send(res, get_catalogue()); });
  server_->set_exception_handler([send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      send(res, {500, error_body(e.what())});
    } catch (...) {
      send(res, {500, error_body("internal error")});
    }
  });
  server_->set_error_handler([send](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) send(res, {res.status, error_body("not found")});
  });
}

int ApiServer::bind(const std::string& host, int port) {
  server_ = std::make_unique<httplib::Server>();
  routes();
  if (port == 0) return server_->bind_to_any_port(host);
  return server_->bind_to_port(host, port) ? port : -1;
}

void ApiServer::listen() {
  if (server_) server_->listen_after_bind();
}

void ApiServer::stop() {
  if (server_) server_->stop();
}

void ApiServer::wait_until_ready() const {
  if (server_) server_->wait_until_ready();
}

}  // namespace catattr
