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

#include "catattr/abstention.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "catattr/textnorm.hpp"

namespace catattr {
namespace {

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string fmt3(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

// Weights over (artist, title, subject) with absent fields removed and the
// remainder renormalised to sum to one.
std::array<double, 3> effective_weights(Regime regime, const SignalBundle& bundle, const AbstentionConfig& cfg) {
  std::array<double, 3> w{};
  switch (regime) {
    case Regime::artist_driven:
      w = cfg.artist_regime_weights;
      break;
    case Regime::title_driven:
      w = {0.0, cfg.title_regime_weights[0], cfg.title_regime_weights[1]};
      break;
    case Regime::fallback:
      w = {cfg.fallback_weights[0], 0.0, cfg.fallback_weights[1]};
      break;
  }
  if (!bundle.artist.present()) w[0] = 0.0;
  if (!bundle.title.present()) w[1] = 0.0;
  if (!bundle.subject.present()) w[2] = 0.0;
  const double sum = w[0] + w[1] + w[2];
  if (sum > 0.0) {
    for (double& v : w) v /= sum;
  }
  return w;
}

struct Ranking {
  Regime regime;
  std::array<double, 3> weights{};
  std::size_t top = 0;                  // entry position
  std::optional<std::size_t> runner_up;  // entry position of the first distinct candidate
  double top_score = 0.0;
  double margin = 0.0;
};

Ranking rank(Regime regime, const SignalBundle& bundle, const CatalogueIndex& index,
             const std::vector<EntryFieldScores>& scores, const AbstentionConfig& cfg) {
  Ranking r;
  r.regime = regime;
  r.weights = effective_weights(regime, bundle, cfg);
  const std::size_t n = index.entries.size();
  std::vector<double> combined(n);
  for (std::size_t i = 0; i < n; ++i) {
    combined[i] = r.weights[0] * scores[i].artist.blended + r.weights[1] * scores[i].title.blended +
                  r.weights[2] * scores[i].subject.blended;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return combined[a] > combined[b];  // ties keep catalogue order
  });

  std::vector<RankedCandidate> ranked;
  ranked.reserve(n);
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t pos : order) {
    ranked.push_back({index.entries[pos].id(), combined[pos]});
    position.emplace(index.entries[pos].id(), pos);
  }
  const auto distinct = distinct_candidates(index, ranked);
  r.top = position.at(distinct.front().entry_id);
  r.top_score = distinct.front().score;
  if (distinct.size() > 1) {
    r.runner_up = position.at(distinct[1].entry_id);
    r.margin = distinct.front().score - distinct[1].score;
  } else {
    r.margin = distinct.front().score;
  }
  return r;
}

void add_check(std::vector<ThresholdCheck>& checks, std::string_view name, std::string_view rule, double threshold,
               double observed) {
  checks.push_back({std::string(name), std::string(rule), threshold, observed, observed >= threshold});
}

// Appends the acceptance checks of `regime` and returns the first rule that
// passes, or an empty string.
std::string apply_rules(const Ranking& r, const std::vector<EntryFieldScores>& scores, const AbstentionConfig& cfg,
                        std::vector<ThresholdCheck>& checks) {
  const double title_score = scores[r.top].title.blended;
  const std::size_t first = checks.size();
  switch (r.regime) {
    case Regime::artist_driven:
      add_check(checks, "tau_artist_accept", kRuleArtistAccept, cfg.tau_artist_accept, r.top_score);
      break;
    case Regime::title_driven:
      add_check(checks, "tau_t", kRuleTitleDirect, cfg.tau_t, title_score);
      add_check(checks, "mu_t", kRuleTitleDirect, cfg.mu_t, r.margin);
      add_check(checks, "tau_c", kRuleTitleCombined, cfg.tau_c, r.top_score);
      add_check(checks, "mu_c", kRuleTitleCombined, cfg.mu_c, r.margin);
      break;
    case Regime::fallback:
      add_check(checks, "tau_f", kRuleFallback, cfg.tau_f, r.top_score);
      add_check(checks, "mu_f", kRuleFallback, cfg.mu_f, r.margin);
      break;
  }
  std::vector<std::string> order;
  std::map<std::string, bool> all_ok;
  for (std::size_t i = first; i < checks.size(); ++i) {
    auto [it, inserted] = all_ok.emplace(checks[i].rule, true);
    if (inserted) order.push_back(checks[i].rule);
    it->second = it->second && checks[i].satisfied;
  }
  for (const auto& rule : order) {
    if (all_ok[rule]) return rule;
  }
  return {};
}

std::string describe_checks(const std::vector<ThresholdCheck>& checks, std::size_t from) {
  std::ostringstream out;
  for (std::size_t i = from; i < checks.size(); ++i) {
    const auto& c = checks[i];
    if (i > from) out << ", ";
    out << c.name << ' ' << fmt3(c.observed) << (c.satisfied ? " >= " : " < ") << fmt3(c.threshold);
  }
  return out.str();
}

}  // namespace

UncertaintyLexicon::UncertaintyLexicon()
    : UncertaintyLexicon(std::vector<std::string>{"not sure", "unknown", "i don't know", "not visible"}) {}

UncertaintyLexicon::UncertaintyLexicon(std::vector<std::string> phrases) {
  for (const auto& p : phrases) add(p);
}

void UncertaintyLexicon::add(std::string_view phrase) {
  std::string folded = textnorm::fold_for_lexicon(phrase);
  if (folded.empty()) return;
  if (std::find(phrases_.begin(), phrases_.end(), folded) == phrases_.end()) phrases_.push_back(std::move(folded));
}

bool UncertaintyLexicon::matches(std::string_view text) const {
  const std::string folded = textnorm::fold_for_lexicon(text);
  return std::any_of(phrases_.begin(), phrases_.end(),
                     [&folded](const std::string& p) { return folded.find(p) != std::string::npos; });
}

const UncertaintyLexicon& UncertaintyLexicon::standard() {
  static const UncertaintyLexicon lexicon;
  return lexicon;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::artist_driven:
      return "artist_driven";
    case Regime::title_driven:
      return "title_driven";
    case Regime::fallback:
      return "fallback";
  }
  return "fallback";
}

std::string_view to_string(Decision decision) { return decision == Decision::accept ? "accept" : "abstain"; }

Regime regime_from_string(std::string_view s) {
  if (s == "artist_driven") return Regime::artist_driven;
  if (s == "title_driven") return Regime::title_driven;
  if (s == "fallback") return Regime::fallback;
  throw std::invalid_argument("unknown regime: " + std::string(s));
}

Decision decision_from_string(std::string_view s) {
  if (s == "accept") return Decision::accept;
  if (s == "abstain") return Decision::abstain;
  throw std::invalid_argument("unknown decision: " + std::string(s));
}

SignalBundle filter_signals(SignalBundle bundle, bool strict, const UncertaintyLexicon& lexicon) {
  for (Signal* s : {&bundle.title, &bundle.artist, &bundle.subject}) {
    if (!s->guess) continue;
    if (is_blank(*s->guess) || (strict && lexicon.matches(*s->guess))) s->guess.reset();
  }
  return bundle;
}

Regime select_regime(const SignalBundle& bundle, double best_artist_score, const AbstentionConfig& config) {
  if (bundle.artist.present() && best_artist_score >= config.tau_artist) return Regime::artist_driven;
  if (bundle.title.present()) return Regime::title_driven;
  return Regime::fallback;
}

DecisionRecord decide(const SignalBundle& bundle, const CatalogueIndex& index, const AbstentionConfig& config,
                      Execution execution) {
  DecisionRecord rec;
  rec.regime = select_regime(bundle, 0.0, config);
  if (index.empty()) {
    rec.reasoning = "empty catalogue";
    return rec;
  }
  if (!bundle.any()) {
    rec.reasoning = "no signals";
    return rec;
  }

  PreparedSignals prepared;
  if (bundle.title.present()) prepared.title = prepare_guess(*bundle.title.guess, index.stopwords);
  if (bundle.artist.present()) prepared.artist = prepare_guess(*bundle.artist.guess, index.stopwords);
  if (bundle.subject.present()) prepared.subject = prepare_guess(*bundle.subject.guess, index.stopwords);
  const auto scores = score_fields(prepared, index, config.alpha, execution);

  if (bundle.artist.present()) {
    for (const auto& s : scores) rec.best_artist_score = std::max(rec.best_artist_score, s.artist.blended);
  }
  rec.regime = select_regime(bundle, rec.best_artist_score, config);
  add_check(rec.thresholds_applied, "tau_artist", kRuleRegimeSelection, config.tau_artist, rec.best_artist_score);

  std::ostringstream why;
  Ranking reported = rank(rec.regime, bundle, index, scores, config);
  std::size_t from = rec.thresholds_applied.size();
  rec.rule = apply_rules(reported, scores, config, rec.thresholds_applied);
  why << to_string(rec.regime) << ": " << describe_checks(rec.thresholds_applied, from);

  if (rec.rule.empty() && rec.regime == Regime::artist_driven) {
    // Fall through to the regime that would apply without the artist boost.
    const Regime next = bundle.title.present() ? Regime::title_driven : Regime::fallback;
    Ranking alt = rank(next, bundle, index, scores, config);
    from = rec.thresholds_applied.size();
    rec.rule = apply_rules(alt, scores, config, rec.thresholds_applied);
    why << "; fall-through " << to_string(next) << ": " << describe_checks(rec.thresholds_applied, from);
    if (!rec.rule.empty()) reported = alt;
  }

  const auto& top_entry = index.entries[reported.top];
  rec.combined_score = reported.top_score;
  rec.margin = reported.margin;
  rec.title_score = scores[reported.top].title.blended;
  if (reported.runner_up) rec.runner_up_id = index.entries[*reported.runner_up].id();
  if (bundle.title.present()) rec.field_scores["title"] = scores[reported.top].title;
  if (bundle.artist.present()) rec.field_scores["artist"] = scores[reported.top].artist;
  if (bundle.subject.present()) rec.field_scores["subject"] = scores[reported.top].subject;

  if (!rec.rule.empty()) {
    rec.decision = Decision::accept;
    rec.matched_entry_id = top_entry.id();
    rec.matched_title = top_entry.record.title;
    rec.matched_artist = top_entry.record.artist;
    why << "; accepted '" << top_entry.record.title << "' via " << rec.rule << " (combined "
        << fmt3(rec.combined_score) << ", margin " << fmt3(rec.margin) << ")";
  } else {
    why << "; abstained (best candidate '" << top_entry.record.title << "', combined "
        << fmt3(rec.combined_score) << ", margin " << fmt3(rec.margin) << ")";
  }
  rec.reasoning = why.str();
  return rec;
}

Decision replay_thresholds(const DecisionRecord& record) {
  std::map<std::string, bool> all_ok;
  for (const auto& c : record.thresholds_applied) {
    if (c.rule == kRuleRegimeSelection) continue;
    auto [it, inserted] = all_ok.emplace(c.rule, true);
    it->second = it->second && c.observed >= c.threshold;
  }
  for (const auto& [rule, ok] : all_ok) {
    if (ok) return Decision::accept;
  }
  return Decision::abstain;
}

}  // namespace catattr
