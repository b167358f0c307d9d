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
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace catattr::textnorm {

/// A raw string together with its canonical matching form.
///
/// The normalised form is lowercase, compatibility-decomposed with combining
/// marks removed, has standalone Roman numerals I..XX (after the first token)
/// mapped to Arabic digits, and contains only letters, digits and single
/// internal spaces.
struct NormalisedString {
  std::string original;
  std::string normalised;

  bool empty() const { return normalised.empty(); }
  friend bool operator==(const NormalisedString&, const NormalisedString&) = default;
};

/// Content tokens and padded character trigrams of a normalised string.
/// Both vectors are sorted and free of duplicates.
struct TokenSet {
  std::vector<std::string> tokens;
  std::vector<std::string> trigrams;

  friend bool operator==(const TokenSet&, const TokenSet&) = default;
};

/// Title variants harvested from a raw catalogue title. `aliases` always
/// starts with `primary` and is distinct under normalisation.
struct AliasSet {
  NormalisedString primary;
  std::vector<NormalisedString> aliases;

  friend bool operator==(const AliasSet&, const AliasSet&) = default;
};

using StopwordSet = std::set<std::string, std::less<>>;

/// Boundary marker used when windowing trigrams. It can never survive
/// normalisation, so padded trigrams cannot collide with interior ones.
inline constexpr std::string_view kTrigramPad = "⊥";

const StopwordSet& default_stopwords();

/// One token per line, UTF-8. Blank lines and lines starting with '#' are
/// skipped; every entry is normalised before insertion.
StopwordSet load_stopwords(const std::filesystem::path& path);

NormalisedString normalise(std::string_view raw);

TokenSet tokenise(std::string_view normalised, const StopwordSet& stopwords);
inline TokenSet tokenise(const NormalisedString& s, const StopwordSet& stopwords) {
  return tokenise(s.normalised, stopwords);
}

/// Character trigrams of `normalised` with one pad code point on each side.
std::vector<std::string> padded_trigrams(std::string_view normalised);

AliasSet extract_aliases(std::string_view title_raw);

/// Lowercases ASCII and folds typographic apostrophes; used for phrase
/// lexicon matching where full normalisation would erase the apostrophe.
std::string fold_for_lexicon(std::string_view text);

}  // namespace catattr::textnorm
