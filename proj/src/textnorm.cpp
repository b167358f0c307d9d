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

#include "catattr/textnorm.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <stdexcept>
#include <utility>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace catattr::textnorm {
namespace {

const icu::Normalizer2& nfkd() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKDInstance(status);
    if (U_FAILURE(status) || n == nullptr) {
      throw std::runtime_error("ICU NFKD normaliser unavailable");
    }
    return n;
  }();
  return *instance;
}

bool is_mark(UChar32 c) {
  const auto mask = U_GET_GC_MASK(c);
  return (mask & (U_GC_MN_MASK | U_GC_ME_MASK | U_GC_MC_MASK)) != 0;
}

bool is_word_char(UChar32 c) {
  const auto mask = U_GET_GC_MASK(c);
  return (mask & (U_GC_L_MASK | U_GC_ND_MASK)) != 0;
}

// Canonical lowercase spellings of 1..20.
constexpr std::array<std::string_view, 20> kRoman = {
    "i",  "ii",  "iii",  "iv",  "v",  "vi",  "vii",  "viii",  "ix",  "x",
    "xi", "xii", "xiii", "xiv", "xv", "xvi", "xvii", "xviii", "xix", "xx"};

std::string map_roman_token(std::string_view token) {
  for (std::size_t i = 0; i < kRoman.size(); ++i) {
    if (kRoman[i] == token) return std::to_string(i + 1);
  }
  return std::string(token);
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    const std::size_t start = pos;
    while (pos < s.size() && s[pos] != ' ') ++pos;
    if (pos > start) out.push_back(s.substr(start, pos - start));
  }
  return out;
}

// Splits valid UTF-8 into one view per code point.
std::vector<std::string_view> code_points(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = 3;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    len = std::min(len, s.size() - i);
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::u32string to_u32(std::string_view utf8) {
  const icu::UnicodeString u =
      icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  std::u32string out;
  out.reserve(static_cast<std::size_t>(u.length()));
  for (int32_t i = 0; i < u.length();) {
    const UChar32 c = u.char32At(i);
    out.push_back(static_cast<char32_t>(c));
    i += U16_LENGTH(c);
  }
  return out;
}

std::string to_utf8(std::u32string_view s) {
  icu::UnicodeString u;
  for (char32_t c : s) u.append(static_cast<UChar32>(c));
  std::string out;
  u.toUTF8String(out);
  return out;
}

struct Span {
  std::size_t begin;  // first code point of the content
  std::size_t end;    // one past the last content code point
};

// Outermost balanced parenthesised groups. Unmatched brackets stay literal.
std::vector<Span> paren_groups(std::u32string_view s) {
  std::vector<Span> groups;
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == U'(') {
      open.push_back(i);
    } else if (s[i] == U')' && !open.empty()) {
      const std::size_t start = open.back();
      open.pop_back();
      if (open.empty()) groups.push_back({start + 1, i});
    }
  }
  return groups;
}

constexpr std::array<std::pair<char32_t, char32_t>, 4> kQuotePairs = {{
    {U'"', U'"'},
    {U'“', U'”'},
    {U'‘', U'’'},
    {U'«', U'»'},
}};

std::vector<Span> quoted_groups(std::u32string_view s) {
  std::vector<Span> groups;
  std::size_t i = 0;
  while (i < s.size()) {
    bool matched = false;
    for (const auto& [open, close] : kQuotePairs) {
      if (s[i] != open) continue;
      const std::size_t end = s.find(close, i + 1);
      if (end != std::u32string_view::npos) {
        groups.push_back({i + 1, end});
        i = end + 1;
        matched = true;
      }
      break;
    }
    if (!matched) ++i;
  }
  return groups;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending = !out.empty();
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet words = {"the", "a",  "an", "of", "and",      "with",
                                    "in",  "on", "at", "by", "portrait", "study"};
  return words;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file: " + path.string());
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    auto n = normalise(line);
    for (auto token : split_spaces(n.normalised)) words.emplace(token);
  }
  return words;
}

NormalisedString normalise(std::string_view raw) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString text =
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text = nfkd().normalize(text, status);
  text.foldCase();
  text = nfkd().normalize(text, status);
  if (U_FAILURE(status)) {
    throw std::runtime_error(std::string("unicode normalisation failed: ") + u_errorName(status));
  }

  icu::UnicodeString cleaned;
  bool pending_space = false;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    i += U16_LENGTH(c);
    if (is_mark(c)) continue;
    if (is_word_char(c)) {
      if (pending_space && cleaned.length() > 0) cleaned.append(static_cast<UChar>(' '));
      pending_space = false;
      cleaned.append(u_tolower(c));
    } else {
      pending_space = true;
    }
  }

  std::string folded;
  cleaned.toUTF8String(folded);

  std::string out;
  out.reserve(folded.size());
  const auto tokens = split_spaces(folded);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += i == 0 ? std::string(tokens[i]) : map_roman_token(tokens[i]);
  }
  return {std::string(raw), std::move(out)};
}

std::vector<std::string> padded_trigrams(std::string_view normalised) {
  std::vector<std::string> out;
  if (normalised.empty()) return out;
  std::vector<std::string_view> cps;
  cps.push_back(kTrigramPad);
  for (auto cp : code_points(normalised)) cps.push_back(cp);
  cps.push_back(kTrigramPad);
  out.reserve(cps.size() - 2);
  for (std::size_t i = 0; i + 2 < cps.size(); ++i) {
    std::string gram;
    gram.reserve(cps[i].size() + cps[i + 1].size() + cps[i + 2].size());
    gram.append(cps[i]).append(cps[i + 1]).append(cps[i + 2]);
    out.push_back(std::move(gram));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TokenSet tokenise(std::string_view normalised, const StopwordSet& stopwords) {
  TokenSet set;
  for (auto token : split_spaces(normalised)) {
    if (stopwords.find(token) == stopwords.end()) set.tokens.emplace_back(token);
  }
  std::sort(set.tokens.begin(), set.tokens.end());
  set.tokens.erase(std::unique(set.tokens.begin(), set.tokens.end()), set.tokens.end());
  set.trigrams = padded_trigrams(normalised);
  return set;
}

AliasSet extract_aliases(std::string_view title_raw) {
  const std::u32string raw = to_u32(title_raw);
  const auto parens = paren_groups(raw);
  const auto quotes = quoted_groups(raw);

  const std::size_t primary_end = std::min(raw.find(U';'), raw.size());
  std::u32string primary;
  for (std::size_t i = 0; i < primary_end; ++i) {
    bool inside_paren = false;
    for (const auto& g : parens) {
      if (i + 1 >= g.begin && i <= g.end) {  // content plus both brackets
        inside_paren = true;
        break;
      }
    }
    if (inside_paren) continue;
    bool quote_mark = false;
    for (const auto& g : quotes) {
      if (i + 1 == g.begin || i == g.end) {
        quote_mark = true;
        break;
      }
    }
    primary.push_back(quote_mark ? U' ' : raw[i]);
  }

  std::vector<Span> harvested = parens;
  harvested.insert(harvested.end(), quotes.begin(), quotes.end());
  std::stable_sort(harvested.begin(), harvested.end(),
                   [](const Span& a, const Span& b) { return a.begin < b.begin; });

  AliasSet set;
  set.primary = normalise(collapse_whitespace(to_utf8(primary)));
  auto add = [&set](NormalisedString alias) {
    if (alias.empty()) return;
    for (const auto& existing : set.aliases) {
      if (existing.normalised == alias.normalised) return;
    }
    set.aliases.push_back(std::move(alias));
  };
  std::vector<NormalisedString> variants;
  for (const auto& g : harvested) {
    variants.push_back(
        normalise(collapse_whitespace(to_utf8(std::u32string_view(raw).substr(g.begin, g.end - g.begin)))));
  }
  if (set.primary.empty()) {
    // Title consists only of bracketed/quoted text; promote the first variant.
    for (const auto& v : variants) {
      if (!v.empty()) {
        set.primary = v;
        break;
      }
    }
  }
  set.aliases.push_back(set.primary);
  for (auto& v : variants) add(std::move(v));
  return set;
}

std::string fold_for_lexicon(std::string_view text) {
  icu::UnicodeString u =
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  u.foldCase();
  u.findAndReplace(icu::UnicodeString(static_cast<UChar32>(0x2019)), icu::UnicodeString("'"));
  u.findAndReplace(icu::UnicodeString(static_cast<UChar32>(0x2018)), icu::UnicodeString("'"));
  std::string out;
  u.toUTF8String(out);
  return out;
}

}  // namespace catattr::textnorm
