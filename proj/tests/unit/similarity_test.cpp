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

#include <cmath>

#include "brute_force.hpp"
#include "catattr/similarity.hpp"

namespace catattr {
namespace {

CatalogueRecord rec(std::string id, std::string title, std::string artist, std::string subject = {}) {
  CatalogueRecord r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.artist = std::move(artist);
  if (!subject.empty()) r.subject = std::move(subject);
  return r;
}

textnorm::TokenSet toks(std::string_view s, const textnorm::StopwordSet& stop = textnorm::default_stopwords()) {
  return textnorm::tokenise(textnorm::normalise(s), stop);
}

TEST(IdfJaccard, IdentityAndDisjoint) {
  const auto index = build_index({rec("e1", "Hay Wain", "Constable")});
  EXPECT_DOUBLE_EQ(idf_jaccard(toks("hay wain"), toks("hay wain"), index.idf), 1.0);
  EXPECT_DOUBLE_EQ(idf_jaccard(toks("hay wain"), toks("red boy"), index.idf), 0.0);
  EXPECT_DOUBLE_EQ(idf_jaccard(toks(""), toks(""), index.idf), 0.0);
}

TEST(IdfJaccard, MatchesHandSummationOverThreeDocuments) {
  const auto index = build_index({rec("e1", "Hay Wain", "A"), rec("e2", "Hay Cart", "B"), rec("e3", "Lake", "C")});
  const double hay = std::log(4.0 / 3.0) + 1.0;
  const double wain = std::log(2.0) + 1.0;
  const double cart = std::log(2.0) + 1.0;
  const double expected = hay / (hay + wain + cart);
  EXPECT_NEAR(idf_jaccard(toks("hay wain"), toks("hay cart"), index.idf), expected, 1e-15);

  oracle::Corpus corpus;
  corpus.stopwords = {textnorm::default_stopwords().begin(), textnorm::default_stopwords().end()};
  corpus.entries = {{{"hay wain"}, "Hay Wain", "A", ""}, {{"hay cart"}, "Hay Cart", "B", ""}, {{"lake"}, "Lake", "C", ""}};
  EXPECT_NEAR(idf_jaccard(toks("hay wain"), toks("hay cart"), index.idf),
              corpus.idf_jaccard({"hay", "wain"}, {"hay", "cart"}), 1e-15);
}

TEST(TrigramJaccard, HandEnumeratedSets) {
  EXPECT_DOUBLE_EQ(trigram_jaccard(toks("red boy"), toks("red boy")), 1.0);
  EXPECT_DOUBLE_EQ(trigram_jaccard(toks("abc"), toks("xyz")), 0.0);
  // ⊥re red "ed " "d b" " bo" shared; boy oy⊥ vs box ox⊥ differ.
  EXPECT_DOUBLE_EQ(trigram_jaccard(toks("red boy"), toks("red box")), 5.0 / 9.0);
  EXPECT_DOUBLE_EQ(trigram_jaccard(toks(""), toks("")), 0.0);
}

TEST(Blend, WeightedSum) {
  EXPECT_NEAR(blend(0.4, 0.2, 0.65), 0.33, 1e-12);
  EXPECT_DOUBLE_EQ(blend(0.4, 0.2, 1.0), 0.4);
  EXPECT_DOUBLE_EQ(blend(0.4, 0.2, 0.0), 0.2);
}

TEST(AliasScore, VerbatimAliasScoresOne) {
  const auto index = build_index({rec("e1", "Master John (The Red Boy)", "Sir Thomas Lawrence"),
                                  rec("e2", "The Hay Wain", "John Constable")});
  const auto& entry = index.entries[0];
  const auto s = alias_score("the red boy", entry, Field::title, 0.65, index.idf, index.stopwords);
  EXPECT_EQ(s.best_alias, "the red boy");
  EXPECT_DOUBLE_EQ(s.blended, 1.0);
  const auto p = alias_score("Master John", entry, Field::title, 0.65, index.idf, index.stopwords);
  EXPECT_EQ(p.best_alias, "master john");
  EXPECT_DOUBLE_EQ(p.blended, 1.0);
  const auto a = alias_score("SIR THOMAS LAWRENCE", entry, Field::artist, 0.65, index.idf, index.stopwords);
  EXPECT_DOUBLE_EQ(a.blended, 1.0);
}

TEST(AliasScore, EmptyGuessIsAllZero) {
  const auto index = build_index({rec("e1", "The Hay Wain", "John Constable", "A cart in a river")});
  for (Field f : {Field::title, Field::artist, Field::subject}) {
    EXPECT_EQ(alias_score("", index.entries[0], f, 0.65, index.idf, index.stopwords), FieldScore{});
    EXPECT_EQ(alias_score("?!", index.entries[0], f, 0.65, index.idf, index.stopwords), FieldScore{});
  }
}

TEST(AliasScore, MissingSubjectNeverMatches) {
  const auto index = build_index({rec("e1", "The Hay Wain", "John Constable")});
  const auto s = alias_score("a cart in a river", index.entries[0], Field::subject, 0.65, index.idf, index.stopwords);
  EXPECT_DOUBLE_EQ(s.blended, 0.0);
}

TEST(AliasScore, BlendEqualsComponents) {
  const auto index = build_index({rec("e1", "Portrait of Charles William Lambton (The Red Boy)", "Sir Thomas Lawrence"),
                                  rec("e2", "The Blue Boy", "Thomas Gainsborough")});
  for (const char* guess : {"Red Boy", "the boy in red", "Lambton", "Blue"}) {
    for (const auto& e : index.entries) {
      for (double alpha : {0.0, 0.3, 0.65, 1.0}) {
        const auto s = alias_score(guess, e, Field::title, alpha, index.idf, index.stopwords);
        EXPECT_NEAR(s.blended, alpha * s.token_jaccard + (1 - alpha) * s.trigram_jaccard, 1e-12);
        EXPECT_GE(s.blended, 0.0);
        EXPECT_LE(s.blended, 1.0);
      }
    }
  }
}

TEST(AliasScore, AddingAnAliasNeverLowersTheTitleScore) {
  const auto plain = build_index({rec("e1", "Master John", "Lawrence"), rec("e2", "Hay Wain", "Constable")});
  const auto aliased =
      build_index({rec("e1", "Master John (The Red Boy)", "Lawrence"), rec("e2", "Hay Wain", "Constable")});
  for (const char* guess : {"red boy", "master", "john the boy", "hay"}) {
    const auto a = alias_score(guess, plain.entries[0], Field::title, 0.65, plain.idf, plain.stopwords);
    const auto b = alias_score(guess, aliased.entries[0], Field::title, 0.65, plain.idf, plain.stopwords);
    EXPECT_GE(b.blended, a.blended) << guess;
  }
}

TEST(AliasScore, SymmetricComponents) {
  const auto index = build_index({rec("e1", "Hay Wain", "Constable"), rec("e2", "Red Boy", "Lawrence")});
  for (auto [x, y] : {std::pair{"hay wain", "red hay"}, std::pair{"boy", "red boy wain"}}) {
    EXPECT_DOUBLE_EQ(idf_jaccard(toks(x), toks(y), index.idf), idf_jaccard(toks(y), toks(x), index.idf));
    EXPECT_DOUBLE_EQ(trigram_jaccard(toks(x), toks(y)), trigram_jaccard(toks(y), toks(x)));
  }
}

}  // namespace
}  // namespace catattr
