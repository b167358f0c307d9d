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

#include "brute_force.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace oracle {
namespace {

const char* const kVocabulary[] = {"red",   "boy",  "hay",   "wan",    "cart",  "bath",  "lake",  "storm",
                                   "saint", "john", "maser", "george", "queen", "bird",  "garden", "moon",
                                   "the",   "of",   "and",   "a",      "study", "portrait", "shrp", "gold"};

const char kLetters[] = "abcdefghjklmnopqrstuwyz";  // no i, v or x

}  // namespace

std::string normalise(const std::string& raw) {
  std::string out;
  bool pending = false;
  for (char c : raw) {
    const bool letter = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    if (!letter) {
      pending = true;
      continue;
    }
    if (pending && !out.empty()) out += ' ';
    pending = false;
    out += static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
  }
  return out;
}

std::vector<std::string> words(const std::string& normalised) {
  std::vector<std::string> out;
  std::istringstream in(normalised);
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::set<std::string> content_tokens(const std::string& normalised, const std::set<std::string>& stopwords) {
  std::set<std::string> out;
  for (const auto& w : words(normalised)) {
    if (!stopwords.count(w)) out.insert(w);
  }
  return out;
}

std::set<std::string> trigrams(const std::string& normalised) {
  std::set<std::string> out;
  if (normalised.empty()) return out;
  std::vector<std::string> chars{"\xE2\x8A\xA5"};
  for (char c : normalised) chars.emplace_back(1, c);
  chars.emplace_back("\xE2\x8A\xA5");
  for (std::size_t i = 0; i + 3 <= chars.size(); ++i) out.insert(chars[i] + chars[i + 1] + chars[i + 2]);
  return out;
}

std::size_t Corpus::documents() const {
  std::set<std::string> primaries;
  for (const auto& e : entries) primaries.insert(e.title_aliases.front());
  return primaries.size();
}

std::size_t Corpus::document_frequency(const std::string& token) const {
  std::map<std::string, bool> group_has;
  for (const auto& e : entries) {
    bool has = false;
    for (const auto& alias : e.title_aliases) has = has || content_tokens(alias, stopwords).count(token);
    has = has || content_tokens(normalise(e.artist), stopwords).count(token);
    has = has || content_tokens(normalise(e.subject), stopwords).count(token);
    group_has[e.title_aliases.front()] = group_has[e.title_aliases.front()] || has;
  }
  std::size_t df = 0;
  for (const auto& [primary, has] : group_has) df += has ? 1 : 0;
  return df;
}

double Corpus::idf(const std::string& token) const {
  const double n = static_cast<double>(documents());
  const double df = static_cast<double>(document_frequency(token));
  return std::log((n + 1.0) / (df + 1.0)) + 1.0;
}

double Corpus::idf_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) const {
  std::set<std::string> all = a;
  all.insert(b.begin(), b.end());
  double shared = 0.0;
  double total = 0.0;
  for (const auto& t : all) {
    const double w = idf(t);
    total += w;
    if (a.count(t) && b.count(t)) shared += w;
  }
  return total == 0.0 ? 0.0 : shared / total;
}

double Corpus::set_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::size_t shared = 0;
  for (const auto& t : a) shared += b.count(t);
  const std::size_t total = a.size() + b.size() - shared;
  return total == 0 ? 0.0 : static_cast<double>(shared) / static_cast<double>(total);
}

double Corpus::blended(const std::string& guess_raw, const std::string& target_normalised) const {
  const std::string g = normalise(guess_raw);
  if (g.empty()) return 0.0;
  const double tok = idf_jaccard(content_tokens(g, stopwords), content_tokens(target_normalised, stopwords));
  const double tri = set_jaccard(trigrams(g), trigrams(target_normalised));
  return alpha * tok + (1.0 - alpha) * tri;
}

double Corpus::title_score(const std::string& guess_raw, const Entry& e) const {
  double best = 0.0;
  for (const auto& alias : e.title_aliases) best = std::max(best, blended(guess_raw, alias));
  return best;
}

double Corpus::artist_score(const std::string& guess_raw, const Entry& e) const {
  return blended(guess_raw, normalise(e.artist));
}

double Corpus::subject_score(const std::string& guess_raw, const Entry& e) const {
  return blended(guess_raw, normalise(e.subject));
}

bool Generator::chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_) < p; }

int Generator::between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

std::string Generator::word() {
  if (chance(0.8)) {
    constexpr int n = sizeof(kVocabulary) / sizeof(kVocabulary[0]);
    return kVocabulary[between(0, n - 1)];
  }
  std::string w;
  const int len = between(2, 7);
  for (int i = 0; i < len; ++i) w += kLetters[between(0, static_cast<int>(sizeof(kLetters)) - 2)];
  return w;
}

std::string Generator::phrase(int min_words, int max_words) {
  std::string out;
  const int n = between(min_words, max_words);
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += word();
  }
  return out;
}

std::string Generator::decorate(const std::string& phrase) {
  static const char* const kSeparators[] = {" ", " ", " ", ", ", " - ", "  ", "! ", ". "};
  std::string out;
  const auto ws = words(phrase);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i) out += kSeparators[between(0, 7)];
    std::string w = ws[i];
    if (chance(0.3)) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    if (chance(0.05)) {
      for (char& c : w) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    out += w;
  }
  if (chance(0.2)) out += "?";
  return out;
}

std::string Generator::guess_near(const std::string& phrase) {
  std::vector<std::string> ws = words(phrase);
  std::vector<std::string> out;
  for (const auto& w : ws) {
    if (chance(0.2)) continue;
    out.push_back(chance(0.1) ? word() : w);
  }
  if (chance(0.3)) out.insert(out.begin() + between(0, static_cast<int>(out.size())), word());
  if (out.empty()) out.push_back(word());
  std::string joined;
  for (std::size_t i = 0; i < out.size(); ++i) joined += (i ? " " : "") + out[i];
  return decorate(joined);
}

Corpus Generator::corpus(int max_entries) {
  Corpus c;
  c.stopwords = {"the", "a", "an", "of", "and", "with", "in", "on", "at", "by", "portrait", "study"};
  c.alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng_);
  const int n = between(1, max_entries);
  for (int i = 0; i < n; ++i) {
    if (!c.entries.empty() && chance(0.15)) {
      Entry dup = c.entries[static_cast<std::size_t>(between(0, static_cast<int>(c.entries.size()) - 1))];
      dup.artist = decorate(phrase(1, 3));
      c.entries.push_back(dup);
      continue;
    }
    Entry e;
    std::string primary;
    do {
      primary = normalise(phrase(1, 4));
    } while (primary.empty());
    e.title_aliases.push_back(primary);
    e.title_raw = decorate(primary);
    if (chance(0.4)) {
      const std::string alias = normalise(phrase(1, 3));
      if (!alias.empty()) {
        if (alias != primary) e.title_aliases.push_back(alias);
        e.title_raw += " (" + decorate(alias) + ")";
      }
    }
    e.artist = decorate(phrase(1, 3));
    if (chance(0.7)) e.subject = decorate(phrase(2, 6));
    c.entries.push_back(e);
  }
  return c;
}

}  // namespace oracle
