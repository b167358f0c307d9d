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

#include "catattr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace catattr {
namespace {

using Clock = std::chrono::steady_clock;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Returns candidate object substrings starting at each '{', brace-balanced
// with awareness of JSON string literals.
std::vector<std::string_view> json_object_candidates(std::string_view text) {
  std::vector<std::string_view> out;
  for (std::size_t start = text.find('{'); start != std::string_view::npos; start = text.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < text.size(); ++i) {
      const char c = text[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        out.push_back(text.substr(start, i - start + 1));
        break;
      }
    }
  }
  return out;
}

std::optional<nlohmann::json> first_json_object(std::string_view text) {
  for (auto candidate : json_object_candidates(text)) {
    auto doc = nlohmann::json::parse(candidate, nullptr, false);
    if (!doc.is_discarded() && doc.is_object()) return doc;
  }
  return std::nullopt;
}

std::optional<std::string> usable_value(const nlohmann::json& obj, const char* key, const UncertaintyLexicon& lexicon) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  std::string v = trim(it->get<std::string>());
  if (v.empty() || lexicon.matches(v)) return std::nullopt;
  return v;
}

class StageClock {
 public:
  StageClock(PipelineResult& result, std::string name)
      : result_(result), name_(std::move(name)), started_(Clock::now()) {}
  ~StageClock() {
    result_.stage_timings_ms[name_] +=
        std::chrono::duration<double, std::milli>(Clock::now() - started_).count();
  }
  StageClock(const StageClock&) = delete;
  StageClock& operator=(const StageClock&) = delete;

 private:
  PipelineResult& result_;
  std::string name_;
  Clock::time_point started_;
};

struct Runner {
  ModelBackend& backend;
  const PromptSet& prompts;
  const PipelineOptions& options;
  PipelineResult& result;
  MediaRef media;

  std::string ask(PromptSlot slot, const std::string& prompt) {
    GenerationRequest req{media, slot, prompt, options.params};
    GenerationResponse resp = backend.generate(req);
    const std::string& tag = resp.backend.input_format_tag;
    if (std::find(result.response_format_tags.begin(), result.response_format_tags.end(), tag) ==
        result.response_format_tags.end()) {
      result.response_format_tags.push_back(tag);
    }
    return resp.text;
  }

  std::string ask(PromptSlot slot) { return ask(slot, prompts.for_slot(slot)); }

  void fail(const std::string& stage, const BackendError& e) {
    result.failed_stages.push_back(stage + ": " + e.what());
  }
};

void mark_failed_decision(PipelineResult& result, const AbstentionConfig& config) {
  DecisionRecord rec;
  rec.regime = select_regime(filter_signals(result.signals, config.strict_abstention), 0.0, config);
  rec.reasoning = "backend failure";
  result.decision = std::move(rec);
}

}  // namespace

std::vector<VideoInfo> load_video_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open video list: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  std::vector<VideoInfo> videos;

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& item : doc) {
      VideoInfo v;
      if (item.is_string()) {
        v.ref = item.get<std::string>();
      } else {
        v.ref = item.at("video").get<std::string>();
        v.total_frames = item.value("frames", v.total_frames);
        v.fps = item.value("fps", v.fps);
        v.dimensions.width = item.value("width", v.dimensions.width);
        v.dimensions.height = item.value("height", v.dimensions.height);
        if (item.value("modality", std::string("video")) == "image") v.modality = Modality::image;
      }
      videos.push_back(std::move(v));
    }
    return videos;
  }

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    videos.push_back(VideoInfo{line});
  }
  return videos;
}

LabelFields parse_label_json(std::string_view model_text, const UncertaintyLexicon& lexicon) {
  LabelFields out;
  const auto doc = first_json_object(model_text);
  if (!doc) return out;
  out.title = usable_value(*doc, "title", lexicon);
  out.artist = usable_value(*doc, "artist", lexicon);
  return out;
}

DescriptiveFields parse_description_genre(std::string_view model_text) {
  DescriptiveFields out;
  if (const auto doc = first_json_object(model_text)) {
    if (auto it = doc->find("description"); it != doc->end() && it->is_string()) out.description = trim(it->get<std::string>());
    if (auto it = doc->find("genre"); it != doc->end() && it->is_string()) out.genre = trim(it->get<std::string>());
    if (!out.description.empty() || !out.genre.empty()) return out;
  }
  std::istringstream lines{std::string(model_text)};
  std::string line;
  std::string description;
  while (std::getline(lines, line)) {
    const std::string t = trim(line);
    if (t.size() >= 6 && (t.rfind("Genre:", 0) == 0 || t.rfind("genre:", 0) == 0)) {
      out.genre = trim(std::string_view(t).substr(6));
      continue;
    }
    if (!t.empty()) {
      if (!description.empty()) description.push_back(' ');
      description += t;
    }
  }
  if (description.rfind("Description:", 0) == 0) description = trim(std::string_view(description).substr(12));
  out.description = description;
  return out;
}

bool readable_transcription(std::string_view text, const UncertaintyLexicon& lexicon) {
  const std::string t = trim(text);
  return t.size() >= 3 && !lexicon.matches(t);
}

DecisionRecord redecide(const SignalBundle& signals, const CatalogueIndex& index, const AbstentionConfig& config,
                        const UncertaintyLexicon& lexicon, Execution execution) {
  return decide(filter_signals(signals, config.strict_abstention, lexicon), index, config, execution);
}

PipelineResult run_video(const VideoInfo& video, ModelBackend& backend, const CatalogueIndex& index,
                         const AbstentionConfig& config, const PromptSet& prompts, const PipelineOptions& options) {
  PipelineResult result;
  result.video_ref = video.ref;
  result.backend = backend.descriptor();

  // Stage 1: frame plan.
  {
    StageClock clock(result, "frames");
    if (video.modality == Modality::video) {
      try {
        result.frame_plan = plan_frames(video.total_frames, video.fps, options.frame_count, options.long_side,
                                        video.dimensions, options.pixel_budget);
      } catch (const FramePlanError& e) {
        result.failed_stages.push_back(std::string("frames: ") + e.what());
      }
    }
  }
  Runner run{backend, prompts, options, result, backend.preprocess(video.ref, video.modality, result.frame_plan)};

  // Stage 2: label-first transcription, visual Q&A as fallback or supplement.
  bool signal_failure = false;
  SignalBundle label_signals;
  bool label_gave_signal = false;
  if (config.label_first) {
    StageClock clock(result, "transcription");
    try {
      result.transcription = run.ask(PromptSlot::transcription);
      if (readable_transcription(result.transcription, options.lexicon)) {
        result.label_read = true;
        const std::string raw = run.ask(PromptSlot::label, prompts.render_label(trim(result.transcription)));
        const auto fields = parse_label_json(raw, options.lexicon);
        label_signals.title = {fields.title, SignalSource::label_transcription, raw};
        label_signals.artist = {fields.artist, SignalSource::label_transcription, raw};
        label_gave_signal = fields.title.has_value() || fields.artist.has_value();
      }
    } catch (const BackendError& e) {
      run.fail("transcription", e);
      signal_failure = true;
    }
  }

  SignalBundle visual;
  const bool need_visual = !signal_failure && (!label_gave_signal || config.force_visual);
  if (need_visual) {
    StageClock clock(result, "visual_qa");
    try {
      for (auto [slot, signal] : {std::pair{PromptSlot::title, &visual.title},
                                  std::pair{PromptSlot::artist, &visual.artist},
                                  std::pair{PromptSlot::subject, &visual.subject}}) {
        const std::string raw = run.ask(slot);
        *signal = {trim(raw), SignalSource::visual_qa, raw};
      }
    } catch (const BackendError& e) {
      run.fail("visual_qa", e);
      signal_failure = true;
    }
  }

  // Label answers take precedence over visual ones.
  result.signals = visual;
  if (label_gave_signal || result.label_read) {
    for (auto [label, merged] : {std::pair{&label_signals.title, &result.signals.title},
                                 std::pair{&label_signals.artist, &result.signals.artist}}) {
      if (label->present() || !merged->present()) *merged = *label;
    }
  }

  // Stages 3-4: catalogue matching with abstention.
  {
    StageClock clock(result, "matching");
    if (signal_failure) {
      mark_failed_decision(result, config);
    } else {
      result.decision = redecide(result.signals, index, config, options.lexicon, options.execution);
    }
  }

  // Stages 5-7: descriptive outputs, independent of the decision.
  {
    StageClock clock(result, "summary");
    try {
      result.summary = trim(run.ask(PromptSlot::summary));
    } catch (const BackendError& e) {
      run.fail("summary", e);
    }
  }
  {
    StageClock clock(result, "description");
    try {
      const auto fields = parse_description_genre(run.ask(PromptSlot::description));
      result.description = fields.description;
      result.genre = fields.genre;
    } catch (const BackendError& e) {
      run.fail("description", e);
    }
  }
  {
    StageClock clock(result, "scene");
    try {
      result.scene_analysis = trim(run.ask(PromptSlot::scene));
    } catch (const BackendError& e) {
      run.fail("scene", e);
    }
  }
  return result;
}

std::vector<PipelineResult> run_batch(std::span<const VideoInfo> videos, ModelBackend& backend,
                                      const CatalogueIndex& index, const AbstentionConfig& config,
                                      const PromptSet& prompts, const PipelineOptions& options) {
  std::vector<PipelineResult> results(videos.size());
  if (videos.empty()) return results;

  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min({backend.max_in_flight(), videos.size(), hw});

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < videos.size(); i = next++) {
      try {
        results[i] = run_video(videos[i], backend, index, config, prompts, options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = videos.size();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace catattr
