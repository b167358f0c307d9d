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

#include "catattr/fixture_backend.hpp"

#include <fstream>

namespace catattr {

FixtureBackend::FixtureBackend(BackendDescriptor descriptor,
                               std::map<std::string, std::map<std::string, std::string>> script)
    : descriptor_(std::move(descriptor)), script_(std::move(script)) {}

FixtureBackend::FixtureBackend(FixtureBackend&& other) noexcept
    : descriptor_(std::move(other.descriptor_)), script_(std::move(other.script_)) {
  std::lock_guard lock(other.mutex_);
  calls_ = std::move(other.calls_);
}

FixtureBackend FixtureBackend::from_json(const nlohmann::json& doc, std::string default_name) {
  if (!doc.is_object()) throw std::invalid_argument("fixture file must be a JSON object");
  BackendDescriptor desc{std::move(default_name), true, true, false, "fixture"};
  std::map<std::string, std::map<std::string, std::string>> script;
  for (const auto& [key, value] : doc.items()) {
    if (key == "_backend") {
      desc.name = value.value("name", desc.name);
      desc.input_format_tag = value.value("input_format_tag", desc.input_format_tag);
      desc.quantised = value.value("quantised", desc.quantised);
      if (auto it = value.find("modalities"); it != value.end()) {
        desc.supports_image = false;
        desc.supports_video = false;
        for (const auto& m : *it) {
          if (m == "image") desc.supports_image = true;
          if (m == "video") desc.supports_video = true;
        }
      }
      continue;
    }
    if (!value.is_object()) throw std::invalid_argument("fixture entry '" + key + "' must map slots to text");
    auto& slots = script[key];
    for (const auto& [slot, text] : value.items()) {
      if (!prompt_slot_from_string(slot)) {
        throw std::invalid_argument("fixture entry '" + key + "': unknown slot '" + slot + "'");
      }
      if (!text.is_string()) {
        throw std::invalid_argument("fixture entry '" + key + "': slot '" + slot + "' must be a string");
      }
      slots[slot] = text.get<std::string>();
    }
  }
  return FixtureBackend(std::move(desc), std::move(script));
}

FixtureBackend FixtureBackend::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file: " + path.string());
  return from_json(nlohmann::json::parse(in), path.stem().string());
}

GenerationResponse FixtureBackend::generate(const GenerationRequest& request) {
  {
    std::lock_guard lock(mutex_);
    calls_.push_back({request.media.path, request.slot});
  }
  auto media = script_.find(request.media.path);
  if (media == script_.end()) {
    media = script_.find(std::filesystem::path(request.media.path).filename().string());
  }
  if (media == script_.end()) {
    throw FixtureMissingError("fixture '" + descriptor_.name + "' has no media '" + request.media.path + "'");
  }
  auto text = media->second.find(std::string(to_string(request.slot)));
  if (text == media->second.end()) {
    throw FixtureMissingError("fixture '" + descriptor_.name + "' has no slot '" +
                              std::string(to_string(request.slot)) + "' for media '" + request.media.path + "'");
  }
  return {text->second, descriptor_, std::chrono::milliseconds{0}};
}

std::vector<FixtureBackend::Call> FixtureBackend::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

void FixtureBackend::clear_calls() {
  std::lock_guard lock(mutex_);
  calls_.clear();
}

std::vector<std::string> FixtureBackend::media_keys() const {
  std::vector<std::string> keys;
  for (const auto& [k, v] : script_) keys.push_back(k);
  return keys;
}

}  // namespace catattr
