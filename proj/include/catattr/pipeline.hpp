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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "catattr/abstention.hpp"
#include "catattr/backend.hpp"
#include "catattr/catalogue.hpp"
#include "catattr/config.hpp"
#include "catattr/frames.hpp"
#include "catattr/prompts.hpp"

namespace catattr {

/// Container metadata for one input clip. Decoding is delegated to the
/// backend, so these values come from the video list.
struct VideoInfo {
  std::string ref;
  Modality modality = Modality::video;
  std::int64_t total_frames = 2250;  // 90 s at 25 fps
  double fps = 25.0;
  Dimensions dimensions{1920, 1080};
};

/// Plain text (one reference per line, defaults for metadata) or a JSON array
/// of {"video", "frames", "fps", "width", "height", "modality"} objects.
std::vector<VideoInfo> load_video_list(const std::filesystem::path& path);

struct PipelineOptions {
  int frame_count = kDefaultFrameCount;
  int long_side = kDefaultLongSide;
  std::int64_t pixel_budget = kDefaultPixelBudget;
  GenerationParams params;
  UncertaintyLexicon lexicon;
  Execution execution = Execution::parallel;
};

/// Everything produced for one video. Descriptive fields are filled whether
/// or not the identity decision accepts.
struct PipelineResult {
  std::string video_ref;
  std::optional<FrameSamplingPlan> frame_plan;
  std::string transcription;
  bool label_read = false;
  SignalBundle signals;  // as collected, before strict filtering
  DecisionRecord decision;
  std::string summary;
  std::string description;
  std::string genre;
  std::string scene_analysis;
  BackendDescriptor backend;
  std::vector<std::string> response_format_tags;  // distinct tags stamped on responses
  std::map<std::string, double> stage_timings_ms;
  std::vector<std::string> failed_stages;
};

struct LabelFields {
  std::optional<std::string> title;
  std::optional<std::string> artist;
};

/// Reads the first JSON object embedded in model text. Missing, empty,
/// non-string and uncertain values become absent; non-JSON text yields nothing.
LabelFields parse_label_json(std::string_view model_text,
                             const UncertaintyLexicon& lexicon = UncertaintyLexicon::standard());

struct DescriptiveFields {
  std::string description;
  std::string genre;
};

/// Accepts a JSON object with "description"/"genre", or free text with a
/// "Genre:" line, or plain text (genre left empty).
DescriptiveFields parse_description_genre(std::string_view model_text);

/// A transcription is readable when it is not an uncertainty phrase and has at
/// least three characters after trimming.
bool readable_transcription(std::string_view text, const UncertaintyLexicon& lexicon);

PipelineResult run_video(const VideoInfo& video, ModelBackend& backend, const CatalogueIndex& index,
                         const AbstentionConfig& config, const PromptSet& prompts,
                         const PipelineOptions& options = {});

/// Re-derives the decision from stored signals, with no backend involved.
DecisionRecord redecide(const SignalBundle& signals, const CatalogueIndex& index, const AbstentionConfig& config,
                        const UncertaintyLexicon& lexicon = UncertaintyLexicon::standard(),
                        Execution execution = Execution::parallel);

/// Processes videos concurrently, never exceeding backend.max_in_flight()
/// simultaneous videos. Results keep the input order.
std::vector<PipelineResult> run_batch(std::span<const VideoInfo> videos, ModelBackend& backend,
                                      const CatalogueIndex& index, const AbstentionConfig& config,
                                      const PromptSet& prompts, const PipelineOptions& options = {});

}  // namespace catattr
