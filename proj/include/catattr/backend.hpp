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

#include <chrono>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "catattr/frames.hpp"

namespace catattr {

enum class Modality { image, video };

/// Identity of a loaded backend. `input_format_tag` names the visual input
/// pathway (e.g. "native_video" or "extracted_frames") and is stamped onto
/// every response it produces.
struct BackendDescriptor {
  std::string name;
  bool supports_image = true;
  bool supports_video = true;
  bool quantised = false;
  std::string input_format_tag;

  friend bool operator==(const BackendDescriptor&, const BackendDescriptor&) = default;
};

/// Prompt slots a backend may be asked to fill.
enum class PromptSlot { transcription, label, title, artist, subject, summary, description, scene };

std::string_view to_string(PromptSlot slot);
std::optional<PromptSlot> prompt_slot_from_string(std::string_view s);

struct GenerationParams {
  int max_tokens = 256;
  double temperature = 0.0;
  friend bool operator==(const GenerationParams&, const GenerationParams&) = default;
};

/// Media description passed to the backend: the source reference plus the
/// frame plan computed for it.
struct MediaRef {
  std::string path;
  Modality modality = Modality::video;
  std::optional<FrameSamplingPlan> plan;
};

struct GenerationRequest {
  MediaRef media;
  PromptSlot slot = PromptSlot::title;
  std::string prompt;
  GenerationParams params;
};

struct GenerationResponse {
  std::string text;
  BackendDescriptor backend;
  std::chrono::milliseconds latency{0};
};

/// Failures while talking to a model server.
class BackendError : public std::runtime_error {
 public:
  enum class Kind { connection, timeout, server_status, client_status, protocol };

  BackendError(Kind kind, const std::string& what, int status = 0)
      : std::runtime_error(what), kind_(kind), status_(status) {}

  Kind kind() const { return kind_; }
  int status() const { return status_; }
  /// Connection drops, timeouts, 408/429 and 5xx are worth retrying.
  bool retriable() const { return kind_ == Kind::connection || kind_ == Kind::timeout || kind_ == Kind::server_status; }

 private:
  Kind kind_;
  int status_;
};

/// A scripted backend was asked for something its fixture does not contain.
/// This is a mistake in the test data, not a runtime condition.
class FixtureMissingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kUnlimitedInFlight = std::numeric_limits<std::size_t>::max();

/// A vision-language model behind a uniform generate() call. Implementations
/// must be safe to call from up to max_in_flight() threads at once.
class ModelBackend {
 public:
  virtual ~ModelBackend() = default;

  virtual const BackendDescriptor& descriptor() const = 0;
  virtual std::size_t max_in_flight() const = 0;

  /// Attaches the frame plan for video media; images pass through unchanged.
  virtual MediaRef preprocess(const std::string& path, Modality modality, std::optional<FrameSamplingPlan> plan) const;

  virtual GenerationResponse generate(const GenerationRequest& request) = 0;
};

}  // namespace catattr
