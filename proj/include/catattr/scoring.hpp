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

#include <optional>
#include <vector>

#include "catattr/catalogue.hpp"
#include "catattr/similarity.hpp"

namespace catattr {

enum class Execution { serial, parallel };

/// Guesses that survived filtering, prepared once per decision.
struct PreparedSignals {
  std::optional<PreparedGuess> title;
  std::optional<PreparedGuess> artist;
  std::optional<PreparedGuess> subject;
};

struct EntryFieldScores {
  FieldScore title;
  FieldScore artist;
  FieldScore subject;

  friend bool operator==(const EntryFieldScores&, const EntryFieldScores&) = default;
};

/// Scores every catalogue entry on every present field. Output is parallel
/// to index.entries; absent fields stay zero.
std::vector<EntryFieldScores> score_fields(const PreparedSignals& signals, const CatalogueIndex& index,
                                           double alpha, Execution execution = Execution::parallel);

namespace kernels {

// Reference loop; the OpenMP kernel must agree with it bit for bit.
std::vector<EntryFieldScores> score_fields_serial(const PreparedSignals& signals, const CatalogueIndex& index,
                                                  double alpha);

std::vector<EntryFieldScores> score_fields_omp(const PreparedSignals& signals, const CatalogueIndex& index,
                                               double alpha);

}  // namespace kernels
}  // namespace catattr
