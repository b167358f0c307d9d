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

#include "catattr/catalogue.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace catattr {
namespace {

using nlohmann::json;

std::string describe(std::size_t position, const json& obj) {
  std::ostringstream out;
  out << "record " << position;
  if (obj.is_object()) {
    auto it = obj.find("id");
    if (it != obj.end() && it->is_string()) out << " (id '" << it->get<std::string>() << "')";
  }
  return out.str();
}

std::string required_string(const json& obj, std::string_view key, std::size_t position) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw CatalogueError(CatalogueError::Kind::parse,
                         describe(position, obj) + ": missing required key '" + std::string(key) + "'");
  }
  if (!it->is_string()) {
    throw CatalogueError(CatalogueError::Kind::parse,
                         describe(position, obj) + ": key '" + std::string(key) + "' must be a string");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, std::string_view key, std::size_t position) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw CatalogueError(CatalogueError::Kind::parse,
                         describe(position, obj) + ": key '" + std::string(key) + "' must be a string");
  }
  return it->get<std::string>();
}

const std::set<std::string, std::less<>> kKnownKeys = {"id",          "title", "artist",    "subject",
                                                       "description", "genre", "media_file"};

CatalogueEntry make_entry(CatalogueRecord record, const textnorm::StopwordSet& stopwords) {
  CatalogueEntry entry;
  entry.title_aliases = textnorm::extract_aliases(record.title);
  for (const auto& alias : entry.title_aliases.aliases) {
    entry.title_tokens_per_alias.push_back(textnorm::tokenise(alias, stopwords));
  }
  entry.artist_norm = textnorm::normalise(record.artist);
  entry.artist_tokens = textnorm::tokenise(entry.artist_norm, stopwords);
  entry.subject_norm = textnorm::normalise(record.subject.value_or(""));
  entry.subject_tokens = textnorm::tokenise(entry.subject_norm, stopwords);
  entry.record = std::move(record);
  return entry;
}

}  // namespace

IdfTable::IdfTable(std::map<std::string, std::size_t, std::less<>> document_frequency,
                   std::size_t document_count)
    : document_count_(document_count), unseen_(formula(document_count, 0)) {
  for (const auto& [token, df] : document_frequency) {
    weights_.emplace(token, formula(document_count, df));
  }
}

double IdfTable::formula(std::size_t document_count, std::size_t document_frequency) {
  return std::log((static_cast<double>(document_count) + 1.0) /
                  (static_cast<double>(document_frequency) + 1.0)) +
         1.0;
}

double IdfTable::weight(std::string_view token) const {
  auto it = weights_.find(token);
  return it == weights_.end() ? unseen_ : it->second;
}

const CatalogueEntry* CatalogueIndex::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id() == id) return &e;
  }
  return nullptr;
}

std::vector<CatalogueRecord> parse_catalogue(const json& doc) {
  if (!doc.is_array()) {
    throw CatalogueError(CatalogueError::Kind::parse, "catalogue must be a JSON array of records");
  }
  std::vector<CatalogueRecord> records;
  records.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& obj = doc[i];
    if (!obj.is_object()) {
      throw CatalogueError(CatalogueError::Kind::parse, describe(i, obj) + ": expected an object");
    }
    CatalogueRecord r;
    r.id = required_string(obj, "id", i);
    r.title = required_string(obj, "title", i);
    r.artist = required_string(obj, "artist", i);
    r.subject = optional_string(obj, "subject", i);
    r.description = optional_string(obj, "description", i);
    r.genre = optional_string(obj, "genre", i);
    r.media_file = optional_string(obj, "media_file", i);
    for (const auto& [key, value] : obj.items()) {
      if (!kKnownKeys.contains(key)) r.extra[key] = value;
    }
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<CatalogueRecord> load_catalogue_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw CatalogueError(CatalogueError::Kind::parse, "cannot open catalogue file: " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw CatalogueError(CatalogueError::Kind::parse, path.string() + ": " + e.what());
  }
  return parse_catalogue(doc);
}

CatalogueIndex build_index(std::vector<CatalogueRecord> records, const textnorm::StopwordSet& stopwords) {
  CatalogueIndex index;
  index.stopwords = stopwords;

  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!seen.insert(records[i].id).second) {
      throw CatalogueError(CatalogueError::Kind::validation,
                           "record " + std::to_string(i) + ": duplicate id '" + records[i].id + "'");
    }
  }

  index.entries.reserve(records.size());
  for (auto& r : records) index.entries.push_back(make_entry(std::move(r), stopwords));

  std::unordered_map<std::string, std::size_t> group_of_key;
  std::vector<std::set<std::string, std::less<>>> group_tokens;
  for (const auto& entry : index.entries) {
    const std::string& key = entry.title_aliases.primary.normalised;
    index.dedup_key.emplace(entry.id(), key);
    auto [it, inserted] = group_of_key.emplace(key, group_tokens.size());
    if (inserted) group_tokens.emplace_back();
    index.group.push_back(it->second);

    auto& doc = group_tokens[it->second];
    for (const auto& ts : entry.title_tokens_per_alias) doc.insert(ts.tokens.begin(), ts.tokens.end());
    doc.insert(entry.artist_tokens.tokens.begin(), entry.artist_tokens.tokens.end());
    doc.insert(entry.subject_tokens.tokens.begin(), entry.subject_tokens.tokens.end());
  }

  std::map<std::string, std::size_t, std::less<>> df;
  for (const auto& doc : group_tokens) {
    for (const auto& token : doc) ++df[token];
  }
  index.document_count = group_tokens.size();
  index.idf = IdfTable(std::move(df), index.document_count);
  return index;
}

CatalogueIndex build_index(const std::filesystem::path& catalogue_file, const textnorm::StopwordSet& stopwords) {
  return build_index(load_catalogue_records(catalogue_file), stopwords);
}

std::vector<RankedCandidate> distinct_candidates(const CatalogueIndex& index,
                                                 std::span<const RankedCandidate> ranked) {
  std::vector<RankedCandidate> out;
  std::unordered_set<std::string> taken;
  for (const auto& c : ranked) {
    auto it = index.dedup_key.find(c.entry_id);
    const std::string& key = it != index.dedup_key.end() ? it->second : c.entry_id;
    if (taken.insert(key).second) out.push_back(c);
  }
  return out;
}

json record_to_json(const CatalogueRecord& r) {
  json out = r.extra;
  out["id"] = r.id;
  out["title"] = r.title;
  out["artist"] = r.artist;
  if (r.subject) out["subject"] = *r.subject;
  if (r.description) out["description"] = *r.description;
  if (r.genre) out["genre"] = *r.genre;
  if (r.media_file) out["media_file"] = *r.media_file;
  return out;
}

json index_to_json(const CatalogueIndex& index) {
  json entries = json::array();
  for (std::size_t i = 0; i < index.entries.size(); ++i) {
    const auto& e = index.entries[i];
    json aliases = json::array();
    for (std::size_t a = 0; a < e.title_aliases.aliases.size(); ++a) {
      aliases.push_back({{"alias", e.title_aliases.aliases[a].normalised},
                         {"tokens", e.title_tokens_per_alias[a].tokens}});
    }
    entries.push_back({{"record", record_to_json(e.record)},
                       {"dedup_key", index.dedup_key.at(e.id())},
                       {"group", index.group[i]},
                       {"title_aliases", aliases},
                       {"artist", e.artist_norm.normalised},
                       {"artist_tokens", e.artist_tokens.tokens},
                       {"subject", e.subject_norm.normalised},
                       {"subject_tokens", e.subject_tokens.tokens}});
  }
  json idf = json::object();
  for (const auto& [token, w] : index.idf.weights()) idf[token] = w;
  return {{"document_count", index.document_count},
          {"entry_count", index.entries.size()},
          {"unseen_idf", index.idf.unseen_weight()},
          {"stopwords", index.stopwords},
          {"entries", entries},
          {"idf", idf}};
}

}  // namespace catattr
