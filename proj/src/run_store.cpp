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

#include "catattr/run_store.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <tuple>

#include "catattr/json_io.hpp"

namespace catattr {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string safe_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    out.push_back(ok ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw RunStoreError(RunStoreError::Kind::io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw RunStoreError(RunStoreError::Kind::corrupt, path.string() + ": " + e.what());
  }
}

std::vector<json> read_jsonl(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw RunStoreError(RunStoreError::Kind::io, "cannot open " + path.string());
  std::vector<json> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw RunStoreError(RunStoreError::Kind::corrupt, path.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw RunStoreError(RunStoreError::Kind::io, "cannot write " + path.string());
}

}  // namespace

std::string sha256_file(const fs::path& path) {
  std::string bytes;
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RunStoreError(RunStoreError::Kind::io, "cannot open " + path.string());
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw RunStoreError(RunStoreError::Kind::io, "sha256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_to_json(const RunManifest& m) {
  return {{"run_id", m.run_id},
          {"label", m.label},
          {"config", to_json(m.config)},
          {"backend", m.backend},
          {"catalogue", {{"path", m.catalogue_path}, {"sha256", m.catalogue_sha256}, {"entries", m.catalogue_entries}}},
          {"videos", m.videos},
          {"started_at", m.started_at},
          {"finished_at", m.finished_at}};
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  j.at("run_id").get_to(m.run_id);
  m.label = j.value("label", std::string());
  m.config = config_from_json(j.at("config"));
  j.at("backend").get_to(m.backend);
  const auto& cat = j.at("catalogue");
  cat.at("path").get_to(m.catalogue_path);
  cat.at("sha256").get_to(m.catalogue_sha256);
  cat.at("entries").get_to(m.catalogue_entries);
  j.at("videos").get_to(m.videos);
  m.started_at = j.value("started_at", std::string());
  m.finished_at = j.value("finished_at", std::string());
  return m;
}

RunStore::RunStore(fs::path root) : root_(std::move(root)) {}

fs::path RunStore::dir(std::string_view run_id) const { return root_ / safe_name(run_id); }

bool RunStore::exists(std::string_view run_id) const {
  return !run_id.empty() && fs::is_regular_file(dir(run_id) / "manifest.json");
}

RunManifest RunStore::save(const std::vector<PipelineResult>& results, const AbstentionConfig& config,
                           const BackendDescriptor& backend, const fs::path& catalogue_path,
                           std::size_t catalogue_entries, std::string label, std::optional<std::string> run_id,
                           std::string started_at) {
  RunManifest m;
  m.label = std::move(label);
  m.config = config;
  m.backend = backend;
  m.catalogue_path = catalogue_path.empty() ? std::string() : fs::absolute(catalogue_path).lexically_normal().string();
  m.catalogue_sha256 = sha256_file(catalogue_path);
  m.catalogue_entries = catalogue_entries;
  m.started_at = started_at.empty() ? utc_timestamp() : std::move(started_at);
  for (const auto& r : results) m.videos.push_back(r.video_ref);

  if (run_id) {
    m.run_id = safe_name(*run_id);
    if (exists(m.run_id)) throw RunStoreError(RunStoreError::Kind::io, "run already exists: " + m.run_id);
  } else {
    std::string stamp = m.started_at;
    stamp.erase(std::remove_if(stamp.begin(), stamp.end(), [](char c) { return c == '-' || c == ':'; }), stamp.end());
    const std::string base = safe_name((m.label.empty() ? backend.name : m.label) + "-" + stamp);
    m.run_id = base;
    for (int n = 2; exists(m.run_id) || fs::exists(dir(m.run_id)); ++n) m.run_id = base + "-" + std::to_string(n);
  }

  const fs::path d = dir(m.run_id);
  std::error_code ec;
  fs::create_directories(d / "results", ec);
  if (ec) throw RunStoreError(RunStoreError::Kind::io, "cannot create " + d.string() + ": " + ec.message());

  std::ofstream decisions(d / "decisions.jsonl", std::ios::binary | std::ios::app);
  std::ofstream signals(d / "signals.jsonl", std::ios::binary | std::ios::app);
  for (const auto& r : results) {
    write_file(d / "results" / (safe_name(r.video_ref) + ".json"), json(r).dump(2) + "\n");
    decisions << json{{"video", r.video_ref}, {"decision", r.decision}}.dump() << '\n';
    signals << json{{"video", r.video_ref}, {"signals", r.signals}}.dump() << '\n';
  }
  decisions.flush();
  signals.flush();
  if (!decisions || !signals) throw RunStoreError(RunStoreError::Kind::io, "cannot write run logs in " + d.string());

  m.finished_at = utc_timestamp();
  write_file(d / "manifest.json", manifest_to_json(m).dump(2) + "\n");
  return m;
}

std::vector<RunManifest> RunStore::list() const {
  std::vector<RunManifest> out;
  std::error_code ec;
  if (!fs::is_directory(root_, ec)) return out;
  for (const auto& item : fs::directory_iterator(root_, ec)) {
    if (item.is_directory() && fs::is_regular_file(item.path() / "manifest.json")) {
      out.push_back(manifest_from_json(read_json(item.path() / "manifest.json")));
    }
  }
  std::sort(out.begin(), out.end(), [](const RunManifest& a, const RunManifest& b) {
    return std::tie(a.started_at, a.run_id) < std::tie(b.started_at, b.run_id);
  });
  return out;
}

RunManifest RunStore::manifest(std::string_view run_id) const {
  if (!exists(run_id)) throw RunStoreError(RunStoreError::Kind::not_found, "unknown run: " + std::string(run_id));
  return manifest_from_json(read_json(dir(run_id) / "manifest.json"));
}

std::vector<std::pair<std::string, DecisionRecord>> RunStore::decisions(std::string_view run_id) const {
  if (!exists(run_id)) throw RunStoreError(RunStoreError::Kind::not_found, "unknown run: " + std::string(run_id));
  std::vector<std::pair<std::string, DecisionRecord>> out;
  for (const auto& line : read_jsonl(dir(run_id) / "decisions.jsonl")) {
    out.emplace_back(line.at("video").get<std::string>(), line.at("decision").get<DecisionRecord>());
  }
  return out;
}

std::vector<StoredSignals> RunStore::signals(std::string_view run_id) const {
  if (!exists(run_id)) throw RunStoreError(RunStoreError::Kind::not_found, "unknown run: " + std::string(run_id));
  std::vector<StoredSignals> out;
  for (const auto& line : read_jsonl(dir(run_id) / "signals.jsonl")) {
    out.push_back({line.at("video").get<std::string>(), line.at("signals").get<SignalBundle>()});
  }
  return out;
}

std::vector<PipelineResult> RunStore::results(std::string_view run_id) const {
  const RunManifest m = manifest(run_id);
  std::vector<PipelineResult> out;
  for (const auto& video : m.videos) {
    out.push_back(read_json(dir(run_id) / "results" / (safe_name(video) + ".json")).get<PipelineResult>());
  }
  return out;
}

CatalogueIndex load_run_catalogue(const RunManifest& manifest, const textnorm::StopwordSet& stopwords) {
  if (manifest.catalogue_path.empty()) return build_index(std::vector<CatalogueRecord>{}, stopwords);
  const std::string hash = sha256_file(manifest.catalogue_path);
  if (hash != manifest.catalogue_sha256) {
    throw RunStoreError(RunStoreError::Kind::catalogue_changed,
                        "catalogue changed since run " + manifest.run_id + ": " + manifest.catalogue_path);
  }
  return build_index(fs::path(manifest.catalogue_path), stopwords);
}

std::vector<std::pair<std::string, DecisionRecord>> replay_run(const std::vector<StoredSignals>& signals,
                                                               const CatalogueIndex& index,
                                                               const AbstentionConfig& config,
                                                               const UncertaintyLexicon& lexicon) {
  std::vector<std::pair<std::string, DecisionRecord>> out;
  out.reserve(signals.size());
  for (const auto& s : signals) out.emplace_back(s.video, redecide(s.signals, index, config, lexicon));
  return out;
}

}  // namespace catattr
