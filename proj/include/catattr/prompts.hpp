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
#include <string>
#include <string_view>

#include "catattr/backend.hpp"

namespace catattr {

/// Prompt templates, one per slot. The label template may contain the
/// placeholder "{transcription}", replaced with the stage-2 transcription.
struct PromptSet {
  std::string transcription;
  std::string label;
  std::string title;
  std::string artist;
  std::string subject;
  std::string summary;
  std::string description;  // description and genre together, as JSON
  std::string scene;

  const std::string& for_slot(PromptSlot slot) const;
  std::string& for_slot(PromptSlot slot);

  static PromptSet defaults();
  /// Reads <slot>.txt from `dir` for every slot present; missing files keep
  /// the default template.
  static PromptSet load(const std::filesystem::path& dir);
  void save(const std::filesystem::path& dir) const;

  std::string render_label(std::string_view transcription_text) const;
};

}  // namespace catattr
