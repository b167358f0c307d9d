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

#include "catattr/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace catattr {
namespace {

using nlohmann::json;

constexpr double kWeightSumTolerance = 1e-9;

std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::ostringstream out;
  out << "invalid abstention config:";
  for (const auto& i : issues) out << ' ' << i.parameter << " (" << i.message << ");";
  return out.str();
}

void check_unit(std::vector<ConfigIssue>& issues, const char* name, double v) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    issues.push_back({name, "must lie in [0, 1], got " + std::to_string(v)});
  }
}

template <std::size_t N>
void check_weights(std::vector<ConfigIssue>& issues, const char* name, const std::array<double, N>& w) {
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      issues.push_back({name, "weights must lie in [0, 1]"});
      return;
    }
  }
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    issues.push_back({name, "weights must sum to 1, got " + std::to_string(sum)});
  }
}

void read_number(const json& doc, const char* name, double& out, std::vector<ConfigIssue>& issues) {
  auto it = doc.find(name);
  if (it == doc.end()) return;
  if (!it->is_number()) {
    issues.push_back({name, "must be a number"});
    return;
  }
  out = it->get<double>();
}

void read_flag(const json& doc, const char* name, bool& out, std::vector<ConfigIssue>& issues) {
  auto it = doc.find(name);
  if (it == doc.end()) return;
  if (!it->is_boolean()) {
    issues.push_back({name, "must be a boolean"});
    return;
  }
  out = it->get<bool>();
}

template <std::size_t N>
void read_tuple(const json& doc, const char* name, std::array<double, N>& out, std::vector<ConfigIssue>& issues) {
  auto it = doc.find(name);
  if (it == doc.end()) return;
  if (!it->is_array() || it->size() != N ||
      !std::all_of(it->begin(), it->end(), [](const json& v) { return v.is_number(); })) {
    issues.push_back({name, "must be an array of " + std::to_string(N) + " numbers"});
    return;
  }
  for (std::size_t i = 0; i < N; ++i) out[i] = (*it)[i].get<double>();
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

std::vector<ConfigIssue> validate(const AbstentionConfig& c) {
  std::vector<ConfigIssue> issues;
  check_unit(issues, "tau_artist", c.tau_artist);
  check_unit(issues, "tau_artist_accept", c.tau_artist_accept);
  check_unit(issues, "tau_t", c.tau_t);
  check_unit(issues, "mu_t", c.mu_t);
  check_unit(issues, "tau_c", c.tau_c);
  check_unit(issues, "mu_c", c.mu_c);
  check_unit(issues, "tau_f", c.tau_f);
  check_unit(issues, "mu_f", c.mu_f);
  check_unit(issues, "alpha", c.alpha);
  check_weights(issues, "artist_regime_weights", c.artist_regime_weights);
  check_weights(issues, "title_regime_weights", c.title_regime_weights);
  check_weights(issues, "fallback_weights", c.fallback_weights);
  return issues;
}

json to_json(const AbstentionConfig& c) {
  return {{"tau_artist", c.tau_artist},
          {"tau_artist_accept", c.tau_artist_accept},
          {"tau_t", c.tau_t},
          {"mu_t", c.mu_t},
          {"tau_c", c.tau_c},
          {"mu_c", c.mu_c},
          {"tau_f", c.tau_f},
          {"mu_f", c.mu_f},
          {"alpha", c.alpha},
          {"artist_regime_weights", c.artist_regime_weights},
          {"title_regime_weights", c.title_regime_weights},
          {"fallback_weights", c.fallback_weights},
          {"label_first", c.label_first},
          {"strict_abstention", c.strict_abstention},
          {"force_visual", c.force_visual}};
}

AbstentionConfig config_from_json(const json& doc, const AbstentionConfig& base) {
  if (!doc.is_object()) throw ConfigError({ConfigIssue{"<root>", "config must be a JSON object"}});
  std::vector<ConfigIssue> issues;
  for (const auto& [key, value] : doc.items()) {
    if (std::find_if(kConfigParameterNames.begin(), kConfigParameterNames.end(),
                     [&key](const char* n) { return key == n; }) == kConfigParameterNames.end()) {
      issues.push_back({key, "unknown parameter"});
    }
  }
  AbstentionConfig c = base;
  read_number(doc, "tau_artist", c.tau_artist, issues);
  read_number(doc, "tau_artist_accept", c.tau_artist_accept, issues);
  read_number(doc, "tau_t", c.tau_t, issues);
  read_number(doc, "mu_t", c.mu_t, issues);
  read_number(doc, "tau_c", c.tau_c, issues);
  read_number(doc, "mu_c", c.mu_c, issues);
  read_number(doc, "tau_f", c.tau_f, issues);
  read_number(doc, "mu_f", c.mu_f, issues);
  read_number(doc, "alpha", c.alpha, issues);
  read_tuple(doc, "artist_regime_weights", c.artist_regime_weights, issues);
  read_tuple(doc, "title_regime_weights", c.title_regime_weights, issues);
  read_tuple(doc, "fallback_weights", c.fallback_weights, issues);
  read_flag(doc, "label_first", c.label_first, issues);
  read_flag(doc, "strict_abstention", c.strict_abstention, issues);
  read_flag(doc, "force_visual", c.force_visual, issues);

  for (auto& issue : validate(c)) {
    const bool already = std::any_of(issues.begin(), issues.end(),
                                     [&issue](const ConfigIssue& i) { return i.parameter == issue.parameter; });
    if (!already) issues.push_back(std::move(issue));
  }
  if (!issues.empty()) throw ConfigError(std::move(issues));
  return c;
}

AbstentionConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({ConfigIssue{"<file>", "cannot open " + path.string()}});
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError({ConfigIssue{"<file>", path.string() + ": " + e.what()}});
  }
  return config_from_json(doc);
}

void save_config(const AbstentionConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config: " + path.string());
  out << to_json(config).dump(2) << '\n';
}

}  // namespace catattr
