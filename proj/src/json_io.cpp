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

#include "catattr/json_io.hpp"

#include <stdexcept>
#include <string>

namespace catattr {
namespace {

using nlohmann::json;

template <class T>
json optional_to_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from_json(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

std::string_view to_string(SignalSource s) {
  return s == SignalSource::label_transcription ? "label_transcription" : "visual_qa";
}

SignalSource source_from_string(const std::string& s) {
  if (s == "label_transcription") return SignalSource::label_transcription;
  if (s == "visual_qa") return SignalSource::visual_qa;
  throw std::invalid_argument("unknown signal source: " + s);
}

}  // namespace

void to_json(json& j, const Dimensions& d) { j = json{{"width", d.width}, {"height", d.height}}; }

void from_json(const json& j, Dimensions& d) {
  j.at("width").get_to(d.width);
  j.at("height").get_to(d.height);
}

void to_json(json& j, const FrameSamplingPlan& plan) {
  j = json{{"frame_count", plan.frame_count},
           {"frame_indices", plan.frame_indices},
           {"timestamps_s", plan.timestamps_s},
           {"target_long_side", plan.target_long_side},
           {"per_frame_pixel_budget", plan.per_frame_pixel_budget},
           {"source", plan.source},
           {"scaled", plan.scaled}};
}

void from_json(const json& j, FrameSamplingPlan& plan) {
  j.at("frame_count").get_to(plan.frame_count);
  j.at("frame_indices").get_to(plan.frame_indices);
  j.at("timestamps_s").get_to(plan.timestamps_s);
  j.at("target_long_side").get_to(plan.target_long_side);
  j.at("per_frame_pixel_budget").get_to(plan.per_frame_pixel_budget);
  j.at("source").get_to(plan.source);
  j.at("scaled").get_to(plan.scaled);
}

void to_json(json& j, const BackendDescriptor& d) {
  j = json{{"name", d.name},
           {"supports_image", d.supports_image},
           {"supports_video", d.supports_video},
           {"quantised", d.quantised},
           {"input_format_tag", d.input_format_tag}};
}

void from_json(const json& j, BackendDescriptor& d) {
  j.at("name").get_to(d.name);
  d.supports_image = j.value("supports_image", true);
  d.supports_video = j.value("supports_video", true);
  d.quantised = j.value("quantised", false);
  d.input_format_tag = j.value("input_format_tag", std::string());
}

void to_json(json& j, const Signal& s) {
  j = json{{"guess", optional_to_json(s.guess)}, {"source", to_string(s.source)}, {"raw_output", s.raw_output}};
}

void from_json(const json& j, Signal& s) {
  s.guess = optional_from_json<std::string>(j, "guess");
  s.source = source_from_string(j.value("source", std::string("visual_qa")));
  s.raw_output = j.value("raw_output", std::string());
}

void to_json(json& j, const SignalBundle& b) {
  j = json{{"title", b.title}, {"artist", b.artist}, {"subject", b.subject}};
}

void from_json(const json& j, SignalBundle& b) {
  j.at("title").get_to(b.title);
  j.at("artist").get_to(b.artist);
  j.at("subject").get_to(b.subject);
}

void to_json(json& j, const FieldScore& f) {
  j = json{{"token_jaccard", f.token_jaccard},
           {"trigram_jaccard", f.trigram_jaccard},
           {"blended", f.blended},
           {"best_alias", f.best_alias}};
}

void from_json(const json& j, FieldScore& f) {
  j.at("token_jaccard").get_to(f.token_jaccard);
  j.at("trigram_jaccard").get_to(f.trigram_jaccard);
  j.at("blended").get_to(f.blended);
  f.best_alias = j.value("best_alias", std::string());
}

void to_json(json& j, const ThresholdCheck& c) {
  j = json{{"name", c.name},
           {"rule", c.rule},
           {"threshold", c.threshold},
           {"observed", c.observed},
           {"satisfied", c.satisfied}};
}

void from_json(const json& j, ThresholdCheck& c) {
  j.at("name").get_to(c.name);
  j.at("rule").get_to(c.rule);
  j.at("threshold").get_to(c.threshold);
  j.at("observed").get_to(c.observed);
  j.at("satisfied").get_to(c.satisfied);
}

void to_json(json& j, const DecisionRecord& r) {
  j = json{{"regime", to_string(r.regime)},
           {"decision", to_string(r.decision)},
           {"rule", r.rule},
           {"matched_entry_id", optional_to_json(r.matched_entry_id)},
           {"matched_title", optional_to_json(r.matched_title)},
           {"matched_artist", optional_to_json(r.matched_artist)},
           {"runner_up_id", optional_to_json(r.runner_up_id)},
           {"combined_score", r.combined_score},
           {"title_score", r.title_score},
           {"margin", r.margin},
           {"best_artist_score", r.best_artist_score},
           {"field_scores", r.field_scores},
           {"thresholds_applied", r.thresholds_applied},
           {"reasoning", r.reasoning}};
}

void from_json(const json& j, DecisionRecord& r) {
  r.regime = regime_from_string(j.at("regime").get<std::string>());
  r.decision = decision_from_string(j.at("decision").get<std::string>());
  r.rule = j.value("rule", std::string());
  r.matched_entry_id = optional_from_json<std::string>(j, "matched_entry_id");
  r.matched_title = optional_from_json<std::string>(j, "matched_title");
  r.matched_artist = optional_from_json<std::string>(j, "matched_artist");
  r.runner_up_id = optional_from_json<std::string>(j, "runner_up_id");
  j.at("combined_score").get_to(r.combined_score);
  j.at("title_score").get_to(r.title_score);
  j.at("margin").get_to(r.margin);
  j.at("best_artist_score").get_to(r.best_artist_score);
  j.at("field_scores").get_to(r.field_scores);
  j.at("thresholds_applied").get_to(r.thresholds_applied);
  r.reasoning = j.value("reasoning", std::string());
}

void to_json(json& j, const PipelineResult& r) {
  j = json{{"video", r.video_ref},
           {"frame_plan", r.frame_plan ? json(*r.frame_plan) : json(nullptr)},
           {"transcription", r.transcription},
           {"label_read", r.label_read},
           {"signals", r.signals},
           {"decision", r.decision},
           {"summary", r.summary},
           {"description", r.description},
           {"genre", r.genre},
           {"scene_analysis", r.scene_analysis},
           {"backend", r.backend},
           {"response_format_tags", r.response_format_tags},
           {"stage_timings_ms", r.stage_timings_ms},
           {"failed_stages", r.failed_stages}};
}

void from_json(const json& j, PipelineResult& r) {
  j.at("video").get_to(r.video_ref);
  r.frame_plan = optional_from_json<FrameSamplingPlan>(j, "frame_plan");
  r.transcription = j.value("transcription", std::string());
  r.label_read = j.value("label_read", false);
  j.at("signals").get_to(r.signals);
  j.at("decision").get_to(r.decision);
  r.summary = j.value("summary", std::string());
  r.description = j.value("description", std::string());
  r.genre = j.value("genre", std::string());
  r.scene_analysis = j.value("scene_analysis", std::string());
  j.at("backend").get_to(r.backend);
  r.response_format_tags = j.value("response_format_tags", std::vector<std::string>{});
  r.stage_timings_ms = j.value("stage_timings_ms", std::map<std::string, double>{});
  r.failed_stages = j.value("failed_stages", std::vector<std::string>{});
}

}  // namespace catattr
