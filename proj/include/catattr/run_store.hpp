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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "catattr/abstention.hpp"
#include "catattr/backend.hpp"
#include "catattr/catalogue.hpp"
#include "catattr/config.hpp"
#include "catattr/pipeline.hpp"

namespace catattr {

class RunStoreError : public std::runtime_error {
 public:
  enum class Kind { not_found, io, corrupt, catalogue_changed };
  RunStoreError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct RunManifest {
  std::string run_id;
  std::string label;
  AbstentionConfig config;
  BackendDescriptor backend;
  std::string catalogue_path;  // empty for a run without a catalogue
  std::string catalogue_sha256;
  std::size_t catalogue_entries = 0;
  std::vector<std::string> videos;
  std::string started_at;  // ISO-8601 UTC
  std::string finished_at;
  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

/// Hex SHA-256 of a file's bytes; of the empty string when `path` is empty.
std::string sha256_file(const std::filesystem::path& path);

std::string utc_timestamp();

struct StoredSignals {
  std::string video;
  SignalBundle signals;
};

/// Runs on disk: <root>/<run_id>/{manifest.json, results/<video>.json,
/// decisions.jsonl, signals.jsonl}. Runs are written once and then only read.
class RunStore {
 public:
  explicit RunStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }

  /// Writes a complete run and returns its manifest. The id is derived from
  /// the label and start time unless `run_id` is given; an existing id is
  /// never overwritten.
  RunManifest save(const std::vector<PipelineResult>& results, const AbstentionConfig& config,
                   const BackendDescriptor& backend, const std::filesystem::path& catalogue_path,
                   std::size_t catalogue_entries, std::string label, std::optional<std::string> run_id = {},
                   std::string started_at = {});

  std::vector<RunManifest> list() const;
  bool exists(std::string_view run_id) const;
  RunManifest manifest(std::string_view run_id) const;
  std::vector<std::pair<std::string, DecisionRecord>> decisions(std::string_view run_id) const;
  std::vector<StoredSignals> signals(std::string_view run_id) const;
  std::vector<PipelineResult> results(std::string_view run_id) const;

 private:
  std::filesystem::path dir(std::string_view run_id) const;

  std::filesystem::path root_;
};

/// Rebuilds the catalogue index a run was produced with, refusing if the
/// file changed since.
CatalogueIndex load_run_catalogue(const RunManifest& manifest,
                                  const textnorm::StopwordSet& stopwords = textnorm::default_stopwords());

/// Re-decides every stored signal bundle under `config`. No backend involved.
std::vector<std::pair<std::string, DecisionRecord>> replay_run(
    const std::vector<StoredSignals>& signals, const CatalogueIndex& index, const AbstentionConfig& config,
    const UncertaintyLexicon& lexicon = UncertaintyLexicon::standard());

}  // namespace catattr
