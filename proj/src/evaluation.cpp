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

#include "catattr/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "catattr/json_io.hpp"
#include "catattr/textnorm.hpp"

namespace catattr {
namespace {

using nlohmann::json;

std::string norm(std::string_view s) { return textnorm::normalise(s).normalised; }

std::string format_ratio(std::optional<double> v) {
  if (!v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void finish(EvaluationReport& r) {
  r.videos = r.per_video.size();
  for (const auto& v : r.per_video) {
    if (v.decision == Decision::accept) ++r.accepts;
    if (v.verdict == Verdict::correct) ++r.correct;
    if (v.verdict == Verdict::false_positive) ++r.false_positives;
    if (v.advisory_match.value_or(false)) ++r.advisory_correct;
  }
  r.coverage = r.videos == 0 ? 0.0 : static_cast<double>(r.accepts) / static_cast<double>(r.videos);
  const std::size_t judged = r.correct + r.false_positives;
  r.precision = judged == 0 ? std::nullopt : std::optional<double>(static_cast<double>(r.correct) / judged);
}

VideoVerdict judge(const std::string& video, const DecisionRecord& d, const GroundTruth& gt) {
  const GroundTruthEntry* truth = gt.find(video);
  if (truth == nullptr) throw EvaluationError("video has no ground-truth entry: " + video);

  VideoVerdict v;
  v.video = video;
  v.decision = d.decision;
  v.regime = d.regime;
  v.matched_entry_id = d.matched_entry_id;
  v.matched_title = d.matched_title;
  v.combined_score = d.combined_score;
  v.margin = d.margin;
  if (!d.accepted()) {
    v.verdict = Verdict::abstain;
    return v;
  }
  const bool agrees = identity_matches(*truth, d.matched_title.value_or(""), d.matched_artist.value_or(""));
  if (truth->has_gt) {
    v.verdict = agrees ? Verdict::correct : Verdict::false_positive;
  } else {
    v.verdict = Verdict::no_gt;
    if (truth->advisory) v.advisory_match = agrees;
  }
  return v;
}

}  // namespace

GroundTruth::GroundTruth(std::vector<GroundTruthEntry> entries) : entries_(std::move(entries)) {
  std::set<std::string, std::less<>> seen;
  for (const auto& e : entries_) {
    if (!seen.insert(e.video).second) throw EvaluationError("duplicate ground-truth video: " + e.video);
    if (e.has_gt && (e.title.empty() || e.artist.empty())) {
      throw EvaluationError("ground-truth video " + e.video + " needs a title and an artist");
    }
  }
}

GroundTruth GroundTruth::from_json(const json& doc) {
  if (!doc.is_array()) throw EvaluationError("ground truth must be a JSON array");
  std::vector<GroundTruthEntry> entries;
  for (const auto& item : doc) {
    GroundTruthEntry e;
    e.video = item.at("video").get<std::string>();
    e.title = item.value("title", std::string());
    e.artist = item.value("artist", std::string());
    e.has_gt = item.value("has_gt", !e.title.empty() || !e.artist.empty());
    e.advisory = item.value("advisory", false);
    if (e.advisory) e.has_gt = false;
    entries.push_back(std::move(e));
  }
  return GroundTruth(std::move(entries));
}

GroundTruth GroundTruth::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw EvaluationError("cannot open ground truth: " + path.string());
  try {
    return from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw EvaluationError(path.string() + ": " + e.what());
  }
}

const GroundTruthEntry* GroundTruth::find(std::string_view video) const {
  for (const auto& e : entries_) {
    if (e.video == video) return &e;
  }
  const std::string stem = std::filesystem::path(video).stem().string();
  for (const auto& e : entries_) {
    if (e.video == stem) return &e;
  }
  return nullptr;
}

std::size_t GroundTruth::labelled() const {
  return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_gt; }));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::correct:
      return "correct";
    case Verdict::false_positive:
      return "false_positive";
    case Verdict::abstain:
      return "abstain";
    case Verdict::no_gt:
      return "no_gt";
  }
  return "abstain";
}

Verdict verdict_from_string(std::string_view s) {
  for (auto v : {Verdict::correct, Verdict::false_positive, Verdict::abstain, Verdict::no_gt}) {
    if (to_string(v) == s) return v;
  }
  throw std::invalid_argument("unknown verdict: " + std::string(s));
}

bool identity_matches(const GroundTruthEntry& gt, const std::string& matched_title,
                      const std::string& matched_artist) {
  if (matched_title.empty()) return false;
  const auto matched = textnorm::extract_aliases(matched_title);
  const auto truth = textnorm::extract_aliases(gt.title);
  if (!truth.primary.empty() && truth.primary.normalised == matched.primary.normalised) return true;
  if (norm(gt.artist).empty() || norm(gt.artist) != norm(matched_artist)) return false;
  for (const auto& g : truth.aliases) {
    for (const auto& m : matched.aliases) {
      if (g.normalised == m.normalised) return true;
    }
  }
  return false;
}

EvaluationReport evaluate_decisions(const std::vector<std::pair<std::string, DecisionRecord>>& decisions,
                                    const GroundTruth& gt, const AbstentionConfig& config,
                                    const BackendDescriptor& backend, std::string label) {
  EvaluationReport r;
  r.label = std::move(label);
  r.config = config;
  r.backend = backend;
  std::set<std::string, std::less<>> seen;
  for (const auto& [video, decision] : decisions) {
    if (!seen.insert(video).second) throw EvaluationError("duplicate video in results: " + video);
    r.per_video.push_back(judge(video, decision, gt));
    if (const auto* truth = gt.find(video); truth != nullptr && truth->has_gt) ++r.labelled_videos;
  }
  finish(r);
  return r;
}

EvaluationReport evaluate(const std::vector<PipelineResult>& results, const GroundTruth& gt,
                          const AbstentionConfig& config, std::string label) {
  std::vector<std::pair<std::string, DecisionRecord>> decisions;
  decisions.reserve(results.size());
  for (const auto& res : results) decisions.emplace_back(res.video_ref, res.decision);
  const BackendDescriptor backend = results.empty() ? BackendDescriptor{} : results.front().backend;
  EvaluationReport r = evaluate_decisions(decisions, gt, config, backend, std::move(label));

  std::set<std::string> tags;
  for (const auto& res : results) {
    if (!(res.backend == backend)) r.warnings.push_back("mixed backends in one run: " + res.video_ref);
    tags.insert(res.response_format_tags.begin(), res.response_format_tags.end());
    for (const auto& failed : res.failed_stages) r.warnings.push_back(res.video_ref + ": " + failed);
  }
  for (const auto& tag : tags) {
    if (tag != backend.input_format_tag) {
      r.warnings.push_back("format tag mismatch: backend declares '" + backend.input_format_tag +
                           "' but responses carry '" + tag + "'");
    }
  }
  return r;
}

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "markdown" || s == "md") return ReportFormat::markdown;
  throw std::invalid_argument("unknown report format: " + std::string(s));
}

json report_to_json(const EvaluationReport& report) {
  json rows = json::array();
  for (const auto& v : report.per_video) {
    rows.push_back({{"video", v.video},
                    {"decision", to_string(v.decision)},
                    {"regime", to_string(v.regime)},
                    {"matched_entry_id", v.matched_entry_id ? json(*v.matched_entry_id) : json(nullptr)},
                    {"matched_title", v.matched_title ? json(*v.matched_title) : json(nullptr)},
                    {"combined_score", v.combined_score},
                    {"margin", v.margin},
                    {"verdict", to_string(v.verdict)},
                    {"advisory_match", v.advisory_match ? json(*v.advisory_match) : json(nullptr)}});
  }
  return {{"label", report.label},
          {"per_video", std::move(rows)},
          {"videos", report.videos},
          {"labelled_videos", report.labelled_videos},
          {"accepts", report.accepts},
          {"correct", report.correct},
          {"false_positives", report.false_positives},
          {"advisory_correct", report.advisory_correct},
          {"coverage", report.coverage},
          {"precision", report.precision ? json(*report.precision) : json(nullptr)},
          {"config", to_json(report.config)},
          {"backend", report.backend},
          {"warnings", report.warnings}};
}

EvaluationReport report_from_json(const json& j) {
  EvaluationReport r;
  r.label = j.value("label", std::string());
  for (const auto& row : j.at("per_video")) {
    VideoVerdict v;
    row.at("video").get_to(v.video);
    v.decision = decision_from_string(row.at("decision").get<std::string>());
    v.regime = regime_from_string(row.at("regime").get<std::string>());
    if (!row.at("matched_entry_id").is_null()) v.matched_entry_id = row.at("matched_entry_id").get<std::string>();
    if (!row.at("matched_title").is_null()) v.matched_title = row.at("matched_title").get<std::string>();
    row.at("combined_score").get_to(v.combined_score);
    row.at("margin").get_to(v.margin);
    v.verdict = verdict_from_string(row.at("verdict").get<std::string>());
    if (!row.at("advisory_match").is_null()) v.advisory_match = row.at("advisory_match").get<bool>();
    r.per_video.push_back(std::move(v));
  }
  j.at("videos").get_to(r.videos);
  j.at("labelled_videos").get_to(r.labelled_videos);
  j.at("accepts").get_to(r.accepts);
  j.at("correct").get_to(r.correct);
  j.at("false_positives").get_to(r.false_positives);
  j.at("advisory_correct").get_to(r.advisory_correct);
  j.at("coverage").get_to(r.coverage);
  if (!j.at("precision").is_null()) r.precision = j.at("precision").get<double>();
  r.config = config_from_json(j.at("config"));
  j.at("backend").get_to(r.backend);
  j.at("warnings").get_to(r.warnings);
  return r;
}

std::string render_markdown_table(const std::vector<EvaluationReport>& reports) {
  std::ostringstream out;
  out << "| Config | Videos | Accept | Correct | FP | Prec. |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    if (r.videos == 0) continue;
    out << "| " << (r.label.empty() ? r.backend.name : r.label) << " | " << r.videos << " | " << r.accepts << " | "
        << r.correct << " | " << r.false_positives << " | " << format_ratio(r.precision) << " |\n";
  }
  return out.str();
}

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::json:
      return report_to_json(report).dump(2) + "\n";
    case ReportFormat::markdown:
      return render_markdown_table({report});
    case ReportFormat::csv: {
      std::ostringstream out;
      out << "video,decision,regime,matched_entry_id,matched_title,combined_score,margin,verdict,advisory_match\n";
      for (const auto& v : report.per_video) {
        char scores[64];
        std::snprintf(scores, sizeof scores, "%.6f,%.6f", v.combined_score, v.margin);
        out << csv_field(v.video) << ',' << to_string(v.decision) << ',' << to_string(v.regime) << ','
            << csv_field(v.matched_entry_id.value_or("")) << ',' << csv_field(v.matched_title.value_or("")) << ','
            << scores << ',' << to_string(v.verdict) << ','
            << (v.advisory_match ? (*v.advisory_match ? "true" : "false") : "") << '\n';
      }
      return out.str();
    }
  }
  return {};
}

}  // namespace catattr
