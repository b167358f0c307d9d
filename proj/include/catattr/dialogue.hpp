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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "catattr/catalogue.hpp"

namespace catattr {

enum class DialogueSlot { title, artist, subject, description, genre };

std::string_view to_string(DialogueSlot slot);
DialogueSlot dialogue_slot_from_string(std::string_view s);
bool is_identification(DialogueSlot slot);

inline constexpr std::string_view kNotVisible = "not visible";

struct Turn {
  enum class Role { user, assistant };
  Role role = Role::user;
  std::string text;
  friend bool operator==(const Turn&, const Turn&) = default;
};

struct DialogueSample {
  std::string media_ref;
  std::vector<Turn> turns;
  std::vector<DialogueSlot> slots_covered;
  bool is_abstention = false;
  friend bool operator==(const DialogueSample&, const DialogueSample&) = default;
};

/// Question paraphrases per slot plus the visibility cues used to build
/// abstention samples.
struct DialogueTemplates {
  std::map<DialogueSlot, std::vector<std::string>> questions;
  std::vector<std::string> visibility_cues;

  static DialogueTemplates defaults();
  /// JSON object: slot name -> array of questions, plus "visibility_cues".
  static DialogueTemplates from_json(const nlohmann::json& doc);
  static DialogueTemplates load(const std::filesystem::path& path);
};

struct DialogueOptions {
  double per_entry = 3.5;  // average; fractional parts are spread across entries
  double p_abs = 0.05;
  std::uint64_t seed = 0;
  int turns_per_sample = 2;
};

struct SkippedSlot {
  std::string entry_id;
  DialogueSlot slot;
  friend bool operator==(const SkippedSlot&, const SkippedSlot&) = default;
};

struct DialogueCorpus {
  std::vector<DialogueSample> samples;
  std::vector<SkippedSlot> skipped;  // sampled slots whose catalogue field was empty
};

/// Number of samples for entry i: floor((i+1)*avg) - floor(i*avg).
std::size_t samples_for_entry(std::size_t i, double per_entry);

DialogueCorpus build_dialogues(const CatalogueIndex& index, const DialogueTemplates& templates,
                               const DialogueOptions& options = {});

nlohmann::json sample_to_json(const DialogueSample& sample);
DialogueSample sample_from_json(const nlohmann::json& j);

std::size_t export_jsonl(const std::vector<DialogueSample>& samples, const std::filesystem::path& path);
std::vector<DialogueSample> import_jsonl(const std::filesystem::path& path);

}  // namespace catattr
