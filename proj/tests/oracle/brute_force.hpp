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

// From-scratch reimplementation of the matching score for restricted inputs:
// ASCII letters, spaces and ASCII punctuation only, and no word that spells a
// Roman numeral. Nothing here calls into the library.

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct Entry {
  std::vector<std::string> title_aliases;  // lowercase words joined by single spaces; [0] is the primary
  std::string title_raw;                   // how the title is written in the catalogue
  std::string artist;                      // raw
  std::string subject;                     // raw, may be empty
};

/// Lowercases and turns every run of non-letters into one space.
std::string normalise(const std::string& raw);
std::vector<std::string> words(const std::string& normalised);
std::set<std::string> content_tokens(const std::string& normalised, const std::set<std::string>& stopwords);
std::set<std::string> trigrams(const std::string& normalised);

struct Corpus {
  std::vector<Entry> entries;
  std::set<std::string> stopwords;
  double alpha = 0.65;

  /// Number of distinct primary titles.
  std::size_t documents() const;
  std::size_t document_frequency(const std::string& token) const;
  double idf(const std::string& token) const;

  double idf_jaccard(const std::set<std::string>& a, const std::set<std::string>& b) const;
  static double set_jaccard(const std::set<std::string>& a, const std::set<std::string>& b);
  double blended(const std::string& guess_raw, const std::string& target_normalised) const;

  double title_score(const std::string& guess_raw, const Entry& e) const;
  double artist_score(const std::string& guess_raw, const Entry& e) const;
  double subject_score(const std::string& guess_raw, const Entry& e) const;
};

/// Random corpora and guesses drawn from a small vocabulary so that overlaps
/// are frequent.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::string word();
  std::string phrase(int min_words, int max_words);
  /// Randomly re-cases and punctuates a lowercase phrase.
  std::string decorate(const std::string& phrase);
  Corpus corpus(int max_entries);
  /// Guess derived from a target phrase by dropping, swapping and adding words.
  std::string guess_near(const std::string& phrase);
  std::mt19937_64& rng() { return rng_; }
  bool chance(double p);
  int between(int lo, int hi);

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
