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

#include <gtest/gtest.h>

#include <random>

#include "catattr/textnorm.hpp"

namespace catattr::textnorm {
namespace {

TEST(Normalise, LowercasesAndStripsDiacritics) {
  EXPECT_EQ(normalise("The Hay Wain").normalised, "the hay wain");
  EXPECT_EQ(normalise("Señora Sabasa García").normalised, "senora sabasa garcia");
  EXPECT_EQ(normalise("Señora Sabasa García").original, "Señora Sabasa García");
}

TEST(Normalise, MapsRomanNumeralsAfterTheFirstWord) {
  EXPECT_EQ(normalise("Charles II").normalised, "charles 2");
  EXPECT_EQ(normalise("Henry VIII of England").normalised, "henry 8 of england");
  EXPECT_EQ(normalise("Pope Pius XX").normalised, "pope pius 20");
  EXPECT_EQ(normalise("I saw it").normalised, "i saw it");
  EXPECT_EQ(normalise("Louis XXI").normalised, "louis xxi");
  EXPECT_EQ(normalise("Study IIII").normalised, "study iiii");
}

TEST(Normalise, CollapsesPunctuationAndWhitespace) {
  EXPECT_EQ(normalise("  Mr.  and   Mrs. Andrews!! ").normalised, "mr and mrs andrews");
  EXPECT_EQ(normalise("Gallen-Kallela").normalised, "gallen kallela");
  EXPECT_EQ(normalise("The Painter's Daughters").normalised, "the painter s daughters");
  EXPECT_EQ(normalise("").normalised, "");
  EXPECT_EQ(normalise("?!…").normalised, "");
}

TEST(Normalise, AppliesCompatibilityDecomposition) {
  EXPECT_EQ(normalise("ﬁnal ﬂight").normalised, "final flight");
  EXPECT_EQ(normalise("Straße").normalised, "strasse");
  EXPECT_EQ(normalise("Ｗｈｉｓｔｌｅｊａｃｋｅｔ").normalised, "whistlejacket");
  EXPECT_EQ(normalise("Dürer 1500").normalised, "durer 1500");
}

TEST(Normalise, IsIdempotentOnRandomUnicode) {
  std::mt19937 rng(1234);
  const std::u32string pool =
      U"abcxyzIVXLivx ÀÉÎõüçñßæøåĳﬁ﻿ΩΣλπЖжЯ中文日本語 ,.;:!?'\"()[]-–—_/\\0123456789١٢٣\t\n“”‘’«»";
  for (int trial = 0; trial < 2000; ++trial) {
    std::u32string s;
    const int len = std::uniform_int_distribution<int>(0, 24)(rng);
    for (int i = 0; i < len; ++i) s += pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    std::string utf8;
    for (char32_t c : s) {
      if (c < 0x80) {
        utf8 += static_cast<char>(c);
      } else if (c < 0x800) {
        utf8 += static_cast<char>(0xC0 | (c >> 6));
        utf8 += static_cast<char>(0x80 | (c & 0x3F));
      } else {
        utf8 += static_cast<char>(0xE0 | (c >> 12));
        utf8 += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
        utf8 += static_cast<char>(0x80 | (c & 0x3F));
      }
    }
    const auto once = normalise(utf8).normalised;
    ASSERT_EQ(normalise(once).normalised, once) << "input: " << utf8;
    ASSERT_EQ(once.find("  "), std::string::npos);
    if (!once.empty()) {
      ASSERT_NE(once.front(), ' ');
      ASSERT_NE(once.back(), ' ');
    }
  }
}

TEST(Tokenise, RemovesStopwordsAndBuildsPaddedTrigrams) {
  const StopwordSet stop{"the"};
  const auto t = tokenise("the hay wain", stop);
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"hay", "wain"}));

  const auto hay = tokenise("hay", stop);
  EXPECT_EQ(hay.trigrams, (std::vector<std::string>{"ay⊥", "hay", "⊥ha"}));

  const auto empty = tokenise("", stop);
  EXPECT_TRUE(empty.tokens.empty());
  EXPECT_TRUE(empty.trigrams.empty());
}

TEST(Tokenise, TrigramsSpanTheWholeStringIncludingStopwords) {
  const auto t = tokenise("the boy", default_stopwords());
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"boy"}));
  for (const char* g : {"⊥th", "the", "he ", "e b", " bo", "boy", "oy⊥"}) {
    EXPECT_NE(std::find(t.trigrams.begin(), t.trigrams.end(), g), t.trigrams.end()) << g;
  }
  EXPECT_EQ(t.trigrams.size(), 7u);
}

TEST(Tokenise, SingleCharacterStringHasOneTrigram) {
  EXPECT_EQ(tokenise("a", {}).trigrams, (std::vector<std::string>{"⊥a⊥"}));
}

TEST(Tokenise, DefaultStopwordList) {
  EXPECT_EQ(default_stopwords(), (StopwordSet{"the", "a", "an", "of", "and", "with", "in", "on", "at", "by",
                                              "portrait", "study"}));
  const auto t = tokenise(normalise("Portrait of a Lady with a Fan").normalised, default_stopwords());
  EXPECT_EQ(t.tokens, (std::vector<std::string>{"fan", "lady"}));
}

TEST(ExtractAliases, ParentheticalVariant) {
  const auto a = extract_aliases("Master John (The Red Boy)");
  EXPECT_EQ(a.primary.normalised, "master john");
  ASSERT_EQ(a.aliases.size(), 2u);
  EXPECT_EQ(a.aliases[0].normalised, "master john");
  EXPECT_EQ(a.aliases[1].normalised, "the red boy");
}

TEST(ExtractAliases, PlainTitle) {
  const auto a = extract_aliases("The Entombment");
  EXPECT_EQ(a.primary.normalised, "the entombment");
  ASSERT_EQ(a.aliases.size(), 1u);
  EXPECT_EQ(a.aliases[0], a.primary);
}

TEST(ExtractAliases, SemicolonSegmentAndLaterParenthesis) {
  const auto a = extract_aliases("A; B (C)");
  EXPECT_EQ(a.primary.normalised, "a");
  ASSERT_EQ(a.aliases.size(), 2u);
  EXPECT_EQ(a.aliases[0].normalised, "a");
  EXPECT_EQ(a.aliases[1].normalised, "c");
}

TEST(ExtractAliases, QuotedVariantsKeepTheirTextInThePrimary) {
  const auto a = extract_aliases("Portrait of a Boy “The Red Boy”");
  EXPECT_EQ(a.primary.normalised, "portrait of a boy the red boy");
  ASSERT_EQ(a.aliases.size(), 2u);
  EXPECT_EQ(a.aliases[1].normalised, "the red boy");

  const auto b = extract_aliases("Tiger in a Tropical Storm \"Surprised!\" (Tiger)");
  EXPECT_EQ(b.primary.normalised, "tiger in a tropical storm surprised");
  ASSERT_EQ(b.aliases.size(), 3u);
  EXPECT_EQ(b.aliases[1].normalised, "surprised");
  EXPECT_EQ(b.aliases[2].normalised, "tiger");
}

TEST(ExtractAliases, ApostrophesAreNotQuotes) {
  const auto a = extract_aliases("The Painter's Daughters chasing a Butterfly");
  ASSERT_EQ(a.aliases.size(), 1u);
  EXPECT_EQ(a.primary.normalised, "the painter s daughters chasing a butterfly");
}

TEST(ExtractAliases, NestedAndUnbalancedParentheses) {
  const auto nested = extract_aliases("Landscape (River (Evening))");
  EXPECT_EQ(nested.primary.normalised, "landscape");
  ASSERT_EQ(nested.aliases.size(), 2u);
  EXPECT_EQ(nested.aliases[1].normalised, "river evening");

  const auto open = extract_aliases("Landscape (unfinished");
  EXPECT_EQ(open.primary.normalised, "landscape unfinished");
  EXPECT_EQ(open.aliases.size(), 1u);
}

TEST(ExtractAliases, DuplicateVariantsCollapse) {
  const auto a = extract_aliases("The Red Boy (the RED boy); (Red Boy)");
  EXPECT_EQ(a.primary.normalised, "the red boy");
  ASSERT_EQ(a.aliases.size(), 2u);
  EXPECT_EQ(a.aliases[1].normalised, "red boy");
}

TEST(ExtractAliases, OnlyBracketedTextPromotesFirstVariant) {
  const auto a = extract_aliases("(Untitled)");
  EXPECT_EQ(a.primary.normalised, "untitled");
  EXPECT_EQ(a.aliases.size(), 1u);
}

TEST(ExtractAliases, EveryAliasIsAFixedPoint) {
  for (const char* title : {"Portrait of Charles William Lambton (The Red Boy)", "A; B (C)",
                            "Saint Jerome (Study II; “Hermit”)", "Les Très Riches Heures (Duc de Berry)"}) {
    const auto a = extract_aliases(title);
    EXPECT_EQ(a.aliases.front(), a.primary);
    for (const auto& alias : a.aliases) EXPECT_EQ(normalise(alias.normalised).normalised, alias.normalised);
  }
}

TEST(Lexicon, FoldsCaseAndTypographicApostrophes) {
  EXPECT_EQ(fold_for_lexicon("I DON’T Know"), "i don't know");
}

}  // namespace
}  // namespace catattr::textnorm
