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

#include "catattr/dialogue.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

namespace catattr {
namespace {

using nlohmann::json;

constexpr std::array kAllSlots = {DialogueSlot::title, DialogueSlot::artist, DialogueSlot::subject,
                                  DialogueSlot::description, DialogueSlot::genre};

constexpr std::array<std::string_view, 5> kSlotNames = {"title", "artist", "subject", "description", "genre"};

// Bit-level sampling on top of the raw engine keeps corpora identical across
// standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n)));
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

std::string field_answer(const CatalogueEntry& entry, DialogueSlot slot) {
  const auto& r = entry.record;
  switch (slot) {
    case DialogueSlot::title:
      return entry.title_aliases.primary.original;
    case DialogueSlot::artist:
      return r.artist;
    case DialogueSlot::subject:
      return r.subject.value_or("");
    case DialogueSlot::description:
      return r.description.value_or("");
    case DialogueSlot::genre:
      return r.genre.value_or("");
  }
  return {};
}

std::string with_cue(const std::string& cue, const std::string& question) {
  if (cue.empty()) return question;
  return cue + " " + question;
}

}  // namespace

std::string_view to_string(DialogueSlot slot) { return kSlotNames[static_cast<std::size_t>(slot)]; }

DialogueSlot dialogue_slot_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kSlotNames.size(); ++i) {
    if (kSlotNames[i] == s) return kAllSlots[i];
  }
  throw std::invalid_argument("unknown dialogue slot: " + std::string(s));
}

bool is_identification(DialogueSlot slot) { return slot == DialogueSlot::title || slot == DialogueSlot::artist; }

DialogueTemplates DialogueTemplates::defaults() {
  DialogueTemplates t;
  t.questions[DialogueSlot::title] = {"What is the title of this artwork?", "Which painting is this?",
                                      "What is this work called?", "Can you tell me the title of this piece?"};
  t.questions[DialogueSlot::artist] = {"Who painted this?", "Who is the artist of this work?",
                                       "Which artist made this painting?", "Who created this artwork?"};
  t.questions[DialogueSlot::subject] = {"What does this painting depict?", "What is the subject of this work?",
                                        "What is shown in this artwork?"};
  t.questions[DialogueSlot::description] = {"Describe this artwork.", "Give a short description of this painting.",
                                            "What can you tell me about this work?"};
  t.questions[DialogueSlot::genre] = {"What genre is this painting?", "Which genre does this work belong to?",
                                      "How would you classify this artwork by genre?"};
  t.visibility_cues = {"The label is not visible.", "No wall label can be read in this view.",
                       "The caption is out of frame."};
  return t;
}

DialogueTemplates DialogueTemplates::from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("templates must be a JSON object");
  DialogueTemplates t;
  for (const auto& [key, value] : doc.items()) {
    auto strings = value.get<std::vector<std::string>>();
    if (key == "visibility_cues") {
      t.visibility_cues = std::move(strings);
    } else {
      t.questions[dialogue_slot_from_string(key)] = std::move(strings);
    }
  }
  for (auto slot : kAllSlots) {
    if (t.questions[slot].empty()) {
      throw std::invalid_argument("templates need at least one question for slot " + std::string(to_string(slot)));
    }
  }
  if (t.visibility_cues.empty()) t.visibility_cues = defaults().visibility_cues;
  return t;
}

DialogueTemplates DialogueTemplates::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open templates: " + path.string());
  return from_json(json::parse(in));
}

std::size_t samples_for_entry(std::size_t i, double per_entry) {
  const auto upto = [per_entry](std::size_t k) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(k) * per_entry + 1e-9));
  };
  return upto(i + 1) - upto(i);
}

DialogueCorpus build_dialogues(const CatalogueIndex& index, const DialogueTemplates& templates,
                               const DialogueOptions& options) {
  if (!(options.p_abs >= 0.0 && options.p_abs <= 1.0)) throw std::invalid_argument("p_abs must lie in [0, 1]");
  if (options.per_entry < 0.0) throw std::invalid_argument("per_entry must be non-negative");
  if (options.turns_per_sample < 1) throw std::invalid_argument("turns_per_sample must be at least 1");
  for (auto slot : kAllSlots) {
    auto it = templates.questions.find(slot);
    if (it == templates.questions.end() || it->second.empty()) {
      throw std::invalid_argument("templates need at least one question for slot " + std::string(to_string(slot)));
    }
  }
  if (templates.visibility_cues.empty()) throw std::invalid_argument("templates need at least one visibility cue");

  DialogueCorpus corpus;
  Sampler rng(options.seed);
  for (std::size_t i = 0; i < index.entries.size(); ++i) {
    const CatalogueEntry& entry = index.entries[i];
    const std::string media = entry.record.media_file.value_or(entry.id());
    const std::size_t count = samples_for_entry(i, options.per_entry);
    for (std::size_t s = 0; s < count; ++s) {
      DialogueSample sample;
      sample.media_ref = media;

      if (rng.uniform() < options.p_abs) {
        const auto slot = rng.uniform() < 0.5 ? DialogueSlot::title : DialogueSlot::artist;
        const std::string question = with_cue(rng.pick(templates.visibility_cues), rng.pick(templates.questions.at(slot)));
        sample.turns = {{Turn::Role::user, question}, {Turn::Role::assistant, std::string(kNotVisible)}};
        sample.is_abstention = true;
        corpus.samples.push_back(std::move(sample));
        continue;
      }

      std::vector<DialogueSlot> remaining(kAllSlots.begin(), kAllSlots.end());
      while (!remaining.empty() && sample.slots_covered.size() < static_cast<std::size_t>(options.turns_per_sample)) {
        const std::size_t k = rng.index(remaining.size());
        const DialogueSlot slot = remaining[k];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
        const std::string answer = field_answer(entry, slot);
        if (answer.empty()) {
          corpus.skipped.push_back({entry.id(), slot});
          continue;
        }
        sample.turns.push_back({Turn::Role::user, rng.pick(templates.questions.at(slot))});
        sample.turns.push_back({Turn::Role::assistant, answer});
        sample.slots_covered.push_back(slot);
      }
      if (sample.turns.empty()) {
        sample.turns.push_back({Turn::Role::user, rng.pick(templates.questions.at(DialogueSlot::title))});
        sample.turns.push_back({Turn::Role::assistant, field_answer(entry, DialogueSlot::title)});
        sample.slots_covered.push_back(DialogueSlot::title);
      }
      corpus.samples.push_back(std::move(sample));
    }
  }
  return corpus;
}

json sample_to_json(const DialogueSample& sample) {
  json conversations = json::array();
  for (const auto& t : sample.turns) {
    conversations.push_back({{"role", t.role == Turn::Role::user ? "user" : "assistant"}, {"content", t.text}});
  }
  json slots = json::array();
  for (auto s : sample.slots_covered) slots.push_back(to_string(s));
  return {{"media", sample.media_ref},
          {"conversations", std::move(conversations)},
          {"slots", std::move(slots)},
          {"abstention", sample.is_abstention}};
}

DialogueSample sample_from_json(const json& j) {
  DialogueSample s;
  j.at("media").get_to(s.media_ref);
  for (const auto& t : j.at("conversations")) {
    const auto role = t.at("role").get<std::string>();
    if (role != "user" && role != "assistant") throw std::invalid_argument("unknown role: " + role);
    s.turns.push_back({role == "user" ? Turn::Role::user : Turn::Role::assistant, t.at("content").get<std::string>()});
  }
  for (const auto& slot : j.value("slots", json::array())) {
    s.slots_covered.push_back(dialogue_slot_from_string(slot.get<std::string>()));
  }
  s.is_abstention = j.value("abstention", false);
  return s;
}

std::size_t export_jsonl(const std::vector<DialogueSample>& samples, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& s : samples) out << sample_to_json(s).dump() << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
  return samples.size();
}

std::vector<DialogueSample> import_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<DialogueSample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    samples.push_back(sample_from_json(json::parse(line)));
  }
  return samples;
}

}  // namespace catattr
