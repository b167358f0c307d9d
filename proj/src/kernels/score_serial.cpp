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

#include "catattr/scoring.hpp"

namespace catattr::kernels {

std::vector<EntryFieldScores> score_fields_serial(const PreparedSignals& signals, const CatalogueIndex& index,
                                                  double alpha) {
  std::vector<EntryFieldScores> out(index.entries.size());
  for (std::size_t i = 0; i < index.entries.size(); ++i) {
    const auto& entry = index.entries[i];
    if (signals.title) out[i].title = alias_score(*signals.title, entry, Field::title, alpha, index.idf);
    if (signals.artist) out[i].artist = alias_score(*signals.artist, entry, Field::artist, alpha, index.idf);
    if (signals.subject) out[i].subject = alias_score(*signals.subject, entry, Field::subject, alpha, index.idf);
  }
  return out;
}

}  // namespace catattr::kernels
