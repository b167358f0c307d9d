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

#include <string>
#include <string_view>

#include "catattr/catalogue.hpp"
#include "catattr/textnorm.hpp"

namespace catattr {

enum class Field { title, artist, subject };

std::string_view to_string(Field field);

/// Per-field match of one guess against one catalogue entry.
/// `blended` = alpha * token_jaccard + (1 - alpha) * trigram_jaccard.
struct FieldScore {
  double token_jaccard = 0.0;
  double trigram_jaccard = 0.0;
  double blended = 0.0;
  std::string best_alias;

  friend bool operator==(const FieldScore&, const FieldScore&) = default;
};

/// A model guess, normalised and tokenised once for scoring against many entries.
struct PreparedGuess {
  textnorm::NormalisedString text;
  textnorm::TokenSet tokens;

  bool empty() const { return text.empty(); }
};

PreparedGuess prepare_guess(std::string_view guess, const textnorm::StopwordSet& stopwords);

/// Sum of IDF weights over the token intersection divided by the sum over the
/// union; 0 when the union is empty.
double idf_jaccard(const textnorm::TokenSet& a, const textnorm::TokenSet& b, const IdfTable& idf);

/// Plain Jaccard over padded character trigrams; 0 when the union is empty.
double trigram_jaccard(const textnorm::TokenSet& a, const textnorm::TokenSet& b);

inline double blend(double token_jaccard, double trigram_jaccard, double alpha) {
  return alpha * token_jaccard + (1.0 - alpha) * trigram_jaccard;
}

/// Title scores take the maximum blended score over the entry's aliases (the
/// first alias wins ties); artist and subject compare against the single
/// normalised field. An empty guess scores zero everywhere.
FieldScore alias_score(const PreparedGuess& guess, const CatalogueEntry& entry, Field field, double alpha,
                       const IdfTable& idf);

FieldScore alias_score(std::string_view guess, const CatalogueEntry& entry, Field field, double alpha,
                       const IdfTable& idf, const textnorm::StopwordSet& stopwords);

}  // namespace catattr
