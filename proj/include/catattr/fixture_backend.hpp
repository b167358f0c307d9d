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
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "catattr/backend.hpp"

namespace catattr {

/// Deterministic stand-in for a model: returns scripted text keyed by media
/// reference and prompt slot, and logs every call it receives.
///
/// Fixture file format: a JSON object mapping media key -> slot name -> text.
/// The optional reserved key "_backend" carries the descriptor
/// ({"name", "input_format_tag", "quantised", "modalities": [...]}).
class FixtureBackend final : public ModelBackend {
 public:
  struct Call {
    std::string media;
    PromptSlot slot;
    friend bool operator==(const Call&, const Call&) = default;
  };

  FixtureBackend(BackendDescriptor descriptor, std::map<std::string, std::map<std::string, std::string>> script);

  FixtureBackend(FixtureBackend&& other) noexcept;

  static FixtureBackend load(const std::filesystem::path& path);
  static FixtureBackend from_json(const nlohmann::json& doc, std::string default_name = "fixture");

  const BackendDescriptor& descriptor() const override { return descriptor_; }
  std::size_t max_in_flight() const override { return kUnlimitedInFlight; }
  GenerationResponse generate(const GenerationRequest& request) override;

  std::vector<Call> calls() const;
  void clear_calls();
  std::vector<std::string> media_keys() const;

 private:
  BackendDescriptor descriptor_;
  std::map<std::string, std::map<std::string, std::string>> script_;
  mutable std::mutex mutex_;
  std::vector<Call> calls_;
};

}  // namespace catattr
