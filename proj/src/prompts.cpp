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

#include "catattr/prompts.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace catattr {
namespace {

constexpr PromptSlot kAllSlots[] = {PromptSlot::transcription, PromptSlot::label,   PromptSlot::title,
                                    PromptSlot::artist,        PromptSlot::subject, PromptSlot::summary,
                                    PromptSlot::description,   PromptSlot::scene};

constexpr std::string_view kPlaceholder = "{transcription}";

}  // namespace

const std::string& PromptSet::for_slot(PromptSlot slot) const {
  return const_cast<PromptSet*>(this)->for_slot(slot);
}

std::string& PromptSet::for_slot(PromptSlot slot) {
  switch (slot) {
    case PromptSlot::transcription:
      return transcription;
    case PromptSlot::label:
      return label;
    case PromptSlot::title:
      return title;
    case PromptSlot::artist:
      return artist;
    case PromptSlot::subject:
      return subject;
    case PromptSlot::summary:
      return summary;
    case PromptSlot::description:
      return description;
    case PromptSlot::scene:
      return scene;
  }
  throw std::invalid_argument("unknown prompt slot");
}

PromptSet PromptSet::defaults() {
  PromptSet p;
  p.transcription =
      "Transcribe verbatim any wall label or caption that is visible in this video. "
      "Copy the text exactly as written. If no label is readable, answer: not visible.";
  p.label =
      "The following text was transcribed from a museum wall label:\n{transcription}\n"
      "Extract the artwork title and the artist. Reply with a JSON object with exactly "
      "the keys \"title\" and \"artist\". Use \"not visible\" for a value the label does not give.";
  p.title =
      "What is the title of the main painting shown in this video? Answer with the title only. "
      "If you cannot tell, answer: not visible.";
  p.artist =
      "Who painted the main painting shown in this video? Answer with the artist's name only. "
      "If you cannot tell, answer: not visible.";
  p.subject = "In one sentence, what does the main painting depict?";
  p.summary =
      "List up to three artworks that appear in this video, in order of appearance. For each, "
      "give where it appears in the frame and a short visual description.";
  p.description =
      "Write a short catalogue-style description of the main painting and give its genre. "
      "Reply with a JSON object with the keys \"description\" and \"genre\".";
  p.scene = "Describe the overall scene: the gallery space, lighting, camera movement and any visitors.";
  return p;
}

PromptSet PromptSet::load(const std::filesystem::path& dir) {
  PromptSet p = defaults();
  if (!std::filesystem::is_directory(dir)) throw std::runtime_error("prompt directory not found: " + dir.string());
  for (PromptSlot slot : kAllSlots) {
    const auto file = dir / (std::string(to_string(slot)) + ".txt");
    if (!std::filesystem::exists(file)) continue;
    std::ifstream in(file);
    std::ostringstream text;
    text << in.rdbuf();
    std::string s = text.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    p.for_slot(slot) = std::move(s);
  }
  return p;
}

void PromptSet::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (PromptSlot slot : kAllSlots) {
    std::ofstream out(dir / (std::string(to_string(slot)) + ".txt"));
    out << for_slot(slot) << '\n';
  }
}

std::string PromptSet::render_label(std::string_view transcription_text) const {
  std::string out = label;
  const auto pos = out.find(kPlaceholder);
  if (pos == std::string::npos) {
    out.append("\n").append(transcription_text);
  } else {
    out.replace(pos, kPlaceholder.size(), transcription_text);
  }
  return out;
}

}  // namespace catattr
