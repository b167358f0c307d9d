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

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace catattr {

/// The fifteen operator-tunable abstention parameters.
struct AbstentionConfig {
  // artist-driven regime
  double tau_artist = 0.45;         // best artist score that activates the regime
  double tau_artist_accept = 0.38;  // combined score needed to accept
  // title-driven regime
  double tau_t = 0.52;  // direct title score
  double mu_t = 0.05;   // margin for the direct title rule
  double tau_c = 0.44;  // combined score
  double mu_c = 0.04;   // margin for the combined rule
  // no-title fallback regime
  double tau_f = 0.42;
  double mu_f = 0.04;
  // scoring
  double alpha = 0.65;                                          // token vs trigram weight
  std::array<double, 3> artist_regime_weights{0.46, 0.36, 0.18};  // (artist, title, subject)
  std::array<double, 2> title_regime_weights{0.78, 0.22};       // (title, subject)
  std::array<double, 2> fallback_weights{0.70, 0.30};           // (artist, subject)
  // pipeline behaviour
  bool label_first = true;
  bool strict_abstention = true;
  bool force_visual = false;

  friend bool operator==(const AbstentionConfig&, const AbstentionConfig&) = default;
};

inline constexpr std::array<const char*, 15> kConfigParameterNames = {
    "tau_artist",           "tau_artist_accept", "tau_t",         "mu_t",
    "tau_c",                "mu_c",              "tau_f",         "mu_f",
    "alpha",                "artist_regime_weights", "title_regime_weights",
    "fallback_weights",     "label_first",       "strict_abstention", "force_visual"};

struct ConfigIssue {
  std::string parameter;
  std::string message;
};

/// Carries every problem found in a config, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

std::vector<ConfigIssue> validate(const AbstentionConfig& config);

nlohmann::json to_json(const AbstentionConfig& config);

/// Parses a flat object. Keys may be omitted (defaults apply), unknown keys
/// and out-of-range values are rejected with one issue per parameter.
AbstentionConfig config_from_json(const nlohmann::json& doc, const AbstentionConfig& base = {});
AbstentionConfig load_config(const std::filesystem::path& path);
void save_config(const AbstentionConfig& config, const std::filesystem::path& path);

}  // namespace catattr
