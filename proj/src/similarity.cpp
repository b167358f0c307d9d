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

#include "catattr/similarity.hpp"

#include <algorithm>

namespace catattr {
namespace {

// Weighted merge over two sorted, unique token vectors.
template <typename Weight>
std::pair<double, double> merge_weights(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                        Weight weight) {
  double shared = 0.0;
  double total = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && *ia < *ib)) {
      total += weight(*ia++);
    } else if (ia == a.end() || *ib < *ia) {
      total += weight(*ib++);
    } else {
      const double w = weight(*ia);
      shared += w;
      total += w;
      ++ia;
      ++ib;
    }
  }
  return {shared, total};
}

FieldScore score_against(const PreparedGuess& guess, const textnorm::TokenSet& target,
                         const std::string& target_text, double alpha, const IdfTable& idf) {
  FieldScore s;
  s.token_jaccard = idf_jaccard(guess.tokens, target, idf);
  s.trigram_jaccard = trigram_jaccard(guess.tokens, target);
  s.blended = blend(s.token_jaccard, s.trigram_jaccard, alpha);
  s.best_alias = target_text;
  return s;
}

}  // namespace

std::string_view to_string(Field field) {
  switch (field) {
    case Field::title:
      return "title";
    case Field::artist:
      return "artist";
    case Field::subject:
      return "subject";
  }
  return "unknown";
}

PreparedGuess prepare_guess(std::string_view guess, const textnorm::StopwordSet& stopwords) {
  PreparedGuess p;
  p.text = textnorm::normalise(guess);
  p.tokens = textnorm::tokenise(p.text, stopwords);
  return p;
}

double idf_jaccard(const textnorm::TokenSet& a, const textnorm::TokenSet& b, const IdfTable& idf) {
  const auto [shared, total] =
      merge_weights(a.tokens, b.tokens, [&idf](const std::string& t) { return idf.weight(t); });
  return total > 0.0 ? shared / total : 0.0;
}

double trigram_jaccard(const textnorm::TokenSet& a, const textnorm::TokenSet& b) {
  const auto [shared, total] = merge_weights(a.trigrams, b.trigrams, [](const std::string&) { return 1.0; });
  return total > 0.0 ? shared / total : 0.0;
}

FieldScore alias_score(const PreparedGuess& guess, const CatalogueEntry& entry, Field field, double alpha,
                       const IdfTable& idf) {
  if (guess.empty()) return {};
  switch (field) {
    case Field::title: {
      FieldScore best;
      bool first = true;
      const auto& aliases = entry.title_aliases.aliases;
      for (std::size_t i = 0; i < aliases.size(); ++i) {
        FieldScore s = score_against(guess, entry.title_tokens_per_alias[i], aliases[i].normalised, alpha, idf);
        if (first || s.blended > best.blended) best = std::move(s);
        first = false;
      }
      return best;
    }
    case Field::artist:
      return score_against(guess, entry.artist_tokens, entry.artist_norm.normalised, alpha, idf);
    case Field::subject:
      return score_against(guess, entry.subject_tokens, entry.subject_norm.normalised, alpha, idf);
  }
  return {};
}

FieldScore alias_score(std::string_view guess, const CatalogueEntry& entry, Field field, double alpha,
                       const IdfTable& idf, const textnorm::StopwordSet& stopwords) {
  return alias_score(prepare_guess(guess, stopwords), entry, field, alpha, idf);
}

}  // namespace catattr
