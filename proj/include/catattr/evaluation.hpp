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
#include <vector>

#include <nlohmann/json.hpp>

#include "catattr/abstention.hpp"
#include "catattr/backend.hpp"
#include "catattr/config.hpp"
#include "catattr/pipeline.hpp"

namespace catattr {

struct GroundTruthEntry {
  std::string video;
  std::string title;
  std::string artist;
  bool has_gt = true;
  /// Identity established by inspection only; scored separately and never
  /// counted towards precision.
  bool advisory = false;
  friend bool operator==(const GroundTruthEntry&, const GroundTruthEntry&) = default;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GroundTruth {
 public:
  GroundTruth() = default;
  explicit GroundTruth(std::vector<GroundTruthEntry> entries);

  /// JSON array of {"video", "title", "artist"} with optional "has_gt" and "advisory".
  static GroundTruth from_json(const nlohmann::json& doc);
  static GroundTruth load(const std::filesystem::path& path);

  const GroundTruthEntry* find(std::string_view video) const;
  const std::vector<GroundTruthEntry>& entries() const { return entries_; }
  std::size_t labelled() const;

 private:
  std::vector<GroundTruthEntry> entries_;
};

enum class Verdict { correct, false_positive, abstain, no_gt };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view s);

struct VideoVerdict {
  std::string video;
  Decision decision = Decision::abstain;
  Regime regime = Regime::fallback;
  std::optional<std::string> matched_entry_id;
  std::optional<std::string> matched_title;
  double combined_score = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::abstain;
  /// For accepts on advisory videos: whether the match agrees with the inspected identity.
  std::optional<bool> advisory_match;
  friend bool operator==(const VideoVerdict&, const VideoVerdict&) = default;
};

struct EvaluationReport {
  std::string label;
  std::vector<VideoVerdict> per_video;
  std::size_t videos = 0;
  std::size_t labelled_videos = 0;
  std::size_t accepts = 0;
  std::size_t correct = 0;
  std::size_t false_positives = 0;
  std::size_t advisory_correct = 0;
  double coverage = 0.0;
  std::optional<double> precision;  // undefined when nothing GT-labelled was accepted
  AbstentionConfig config;
  BackendDescriptor backend;
  std::vector<std::string> warnings;
  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

/// One decision per result is compared against ground truth. A match is
/// correct when its normalised primary title equals the GT title, or when the
/// artists agree and the GT title is one of the matched entry's aliases.
EvaluationReport evaluate(const std::vector<PipelineResult>& results, const GroundTruth& gt,
                          const AbstentionConfig& config, std::string label = {});

/// Same scoring for bare (video, decision) pairs, as produced by replay.
EvaluationReport evaluate_decisions(const std::vector<std::pair<std::string, DecisionRecord>>& decisions,
                                    const GroundTruth& gt, const AbstentionConfig& config,
                                    const BackendDescriptor& backend, std::string label = {});

/// Exposed for tests: the identity comparison behind `correct`.
bool identity_matches(const GroundTruthEntry& gt, const std::string& matched_title, const std::string& matched_artist);

enum class ReportFormat { json, csv, markdown };

ReportFormat report_format_from_string(std::string_view s);

nlohmann::json report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(const nlohmann::json& j);

std::string render_report(const EvaluationReport& report, ReportFormat format);
/// Markdown table with one row per report.
std::string render_markdown_table(const std::vector<EvaluationReport>& reports);

}  // namespace catattr
