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

#include <cstdint>

namespace catattr::kernels {

std::vector<EntryFieldScores> score_fields_omp(const PreparedSignals& signals, const CatalogueIndex& index,
                                               double alpha) {
  const auto n = static_cast<std::int64_t>(index.entries.size());
  std::vector<EntryFieldScores> out(index.entries.size());
  // Entries are independent; each iteration writes only its own slot.
#pragma omp parallel for schedule(dynamic, 64) if (n > 256)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& entry = index.entries[static_cast<std::size_t>(i)];
    auto& slot = out[static_cast<std::size_t>(i)];
    if (signals.title) slot.title = alias_score(*signals.title, entry, Field::title, alpha, index.idf);
    if (signals.artist) slot.artist = alias_score(*signals.artist, entry, Field::artist, alpha, index.idf);
    if (signals.subject) slot.subject = alias_score(*signals.subject, entry, Field::subject, alpha, index.idf);
  }
  return out;
}

}  // namespace catattr::kernels
