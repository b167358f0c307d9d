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

#include "catattr/backend.hpp"

#include <array>
#include <utility>

namespace catattr {
namespace {

constexpr std::array<std::pair<PromptSlot, std::string_view>, 8> kSlotNames = {{
    {PromptSlot::transcription, "transcription"},
    {PromptSlot::label, "label"},
    {PromptSlot::title, "title"},
    {PromptSlot::artist, "artist"},
    {PromptSlot::subject, "subject"},
    {PromptSlot::summary, "summary"},
    {PromptSlot::description, "description"},
    {PromptSlot::scene, "scene"},
}};

}  // namespace

std::string_view to_string(PromptSlot slot) {
  for (const auto& [s, name] : kSlotNames) {
    if (s == slot) return name;
  }
  return "unknown";
}

std::optional<PromptSlot> prompt_slot_from_string(std::string_view s) {
  for (const auto& [slot, name] : kSlotNames) {
    if (name == s) return slot;
  }
  return std::nullopt;
}

MediaRef ModelBackend::preprocess(const std::string& path, Modality modality,
                                  std::optional<FrameSamplingPlan> plan) const {
  MediaRef media{path, modality, std::nullopt};
  if (modality == Modality::video) media.plan = std::move(plan);
  return media;
}

}  // namespace catattr
