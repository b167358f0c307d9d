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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "catattr/catalogue.hpp"
#include "catattr/config.hpp"
#include "catattr/scoring.hpp"
#include "catattr/similarity.hpp"

namespace catattr {

enum class SignalSource { label_transcription, visual_qa };

/// One model answer. `raw_output` is kept even when filtering drops `guess`.
struct Signal {
  std::optional<std::string> guess;
  SignalSource source = SignalSource::visual_qa;
  std::string raw_output;

  bool present() const { return guess.has_value(); }
  friend bool operator==(const Signal&, const Signal&) = default;
};

struct SignalBundle {
  Signal title;
  Signal artist;
  Signal subject;

  bool any() const { return title.present() || artist.present() || subject.present(); }
  friend bool operator==(const SignalBundle&, const SignalBundle&) = default;
};

/// Case-insensitive substring lexicon of phrases that mark an answer as
/// uncertain. Typographic apostrophes are folded to ASCII.
class UncertaintyLexicon {
 public:
  UncertaintyLexicon();
  explicit UncertaintyLexicon(std::vector<std::string> phrases);

  bool matches(std::string_view text) const;
  void add(std::string_view phrase);
  const std::vector<std::string>& phrases() const { return phrases_; }

  static const UncertaintyLexicon& standard();

 private:
  std::vector<std::string> phrases_;
};

enum class Regime { artist_driven, title_driven, fallback };
enum class Decision { accept, abstain };

std::string_view to_string(Regime regime);
std::string_view to_string(Decision decision);
Regime regime_from_string(std::string_view s);
Decision decision_from_string(std::string_view s);

// Rule identifiers used in ThresholdCheck::rule.
inline constexpr std::string_view kRuleRegimeSelection = "regime_selection";
inline constexpr std::string_view kRuleArtistAccept = "artist_accept";
inline constexpr std::string_view kRuleTitleDirect = "title_direct";
inline constexpr std::string_view kRuleTitleCombined = "title_combined";
inline constexpr std::string_view kRuleFallback = "fallback";

struct ThresholdCheck {
  std::string name;  // config parameter name
  std::string rule;
  double threshold = 0.0;
  double observed = 0.0;
  bool satisfied = false;

  friend bool operator==(const ThresholdCheck&, const ThresholdCheck&) = default;
};

/// Auditable outcome of one attribution decision.
///
/// `regime` is the regime chosen from the signals. Scores, margin and match
/// fields describe the ranking that produced the decision; when an
/// artist-driven decision falls through to the title-driven or fallback rule,
/// that is the fall-through ranking. `thresholds_applied` lists every
/// threshold consulted, grouped by rule; the decision is accept exactly when
/// some acceptance rule has all of its checks satisfied.
struct DecisionRecord {
  Regime regime = Regime::fallback;
  Decision decision = Decision::abstain;
  std::string rule;
  std::optional<std::string> matched_entry_id;
  std::optional<std::string> matched_title;
  std::optional<std::string> matched_artist;
  std::optional<std::string> runner_up_id;
  double combined_score = 0.0;
  double title_score = 0.0;
  double margin = 0.0;
  double best_artist_score = 0.0;
  std::map<std::string, FieldScore> field_scores;
  std::vector<ThresholdCheck> thresholds_applied;
  std::string reasoning;

  bool accepted() const { return decision == Decision::accept; }
  friend bool operator==(const DecisionRecord&, const DecisionRecord&) = default;
};

SignalBundle filter_signals(SignalBundle bundle, bool strict,
                            const UncertaintyLexicon& lexicon = UncertaintyLexicon::standard());

Regime select_regime(const SignalBundle& bundle, double best_artist_score, const AbstentionConfig& config);

/// Expects a filtered bundle.
DecisionRecord decide(const SignalBundle& bundle, const CatalogueIndex& index, const AbstentionConfig& config,
                      Execution execution = Execution::parallel);

/// Recomputes accept/abstain from a record's own threshold checks.
Decision replay_thresholds(const DecisionRecord& record);

}  // namespace catattr
