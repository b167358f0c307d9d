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

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "catattr/textnorm.hpp"

namespace catattr {

/// Raised for unparseable catalogue files and for records that do not match
/// the schema. The message names the offending record.
class CatalogueError : public std::runtime_error {
 public:
  enum class Kind { parse, validation };
  CatalogueError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// One record of the catalogue file, as written by the curator.
struct CatalogueRecord {
  std::string id;
  std::string title;
  std::string artist;
  std::optional<std::string> subject;
  std::optional<std::string> description;
  std::optional<std::string> genre;
  std::optional<std::string> media_file;
  nlohmann::json extra = nlohmann::json::object();  // unknown keys, kept verbatim
};

struct CatalogueEntry {
  CatalogueRecord record;
  textnorm::AliasSet title_aliases;
  std::vector<textnorm::TokenSet> title_tokens_per_alias;  // parallel to title_aliases.aliases
  textnorm::NormalisedString artist_norm;
  textnorm::TokenSet artist_tokens;
  textnorm::NormalisedString subject_norm;
  textnorm::TokenSet subject_tokens;

  const std::string& id() const { return record.id; }
};

/// Smoothed inverse document frequency: ln((N + 1) / (df + 1)) + 1.
/// Tokens never seen in the catalogue get the df = 0 weight.
class IdfTable {
 public:
  IdfTable() = default;
  IdfTable(std::map<std::string, std::size_t, std::less<>> document_frequency, std::size_t document_count);

  double weight(std::string_view token) const;
  double unseen_weight() const { return unseen_; }
  std::size_t document_count() const { return document_count_; }
  const std::map<std::string, double, std::less<>>& weights() const { return weights_; }

  static double formula(std::size_t document_count, std::size_t document_frequency);

 private:
  std::map<std::string, double, std::less<>> weights_;
  std::size_t document_count_ = 0;
  double unseen_ = 1.0;
};

/// Immutable retrieval index over a catalogue.
///
/// Entries sharing a normalised primary title form one dedup group. IDF is
/// computed with one document per dedup group (the union of its entries'
/// title-alias, artist and subject tokens), so duplicated records leave every
/// weight unchanged.
struct CatalogueIndex {
  std::vector<CatalogueEntry> entries;
  IdfTable idf;
  std::map<std::string, std::string> dedup_key;  // entry id -> normalised primary title
  std::vector<std::size_t> group;                // entry position -> dedup group number
  std::size_t document_count = 0;
  textnorm::StopwordSet stopwords;

  bool empty() const { return entries.empty(); }
  const CatalogueEntry* find(std::string_view id) const;
};

struct RankedCandidate {
  std::string entry_id;
  double score = 0.0;
  friend bool operator==(const RankedCandidate&, const RankedCandidate&) = default;
};

std::vector<CatalogueRecord> parse_catalogue(const nlohmann::json& doc);
std::vector<CatalogueRecord> load_catalogue_records(const std::filesystem::path& path);

CatalogueIndex build_index(std::vector<CatalogueRecord> records,
                           const textnorm::StopwordSet& stopwords = textnorm::default_stopwords());
CatalogueIndex build_index(const std::filesystem::path& catalogue_file,
                           const textnorm::StopwordSet& stopwords = textnorm::default_stopwords());

/// Collapses a score-descending list to one representative per dedup group,
/// keeping the first (best) member of each group and the input order.
std::vector<RankedCandidate> distinct_candidates(const CatalogueIndex& index,
                                                 std::span<const RankedCandidate> ranked);

nlohmann::json record_to_json(const CatalogueRecord& record);
nlohmann::json index_to_json(const CatalogueIndex& index);

}  // namespace catattr
