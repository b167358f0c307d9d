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

namespace catattr {

std::vector<EntryFieldScores> score_fields(const PreparedSignals& signals, const CatalogueIndex& index,
                                           double alpha, Execution execution) {
  return execution == Execution::serial ? kernels::score_fields_serial(signals, index, alpha)
                                        : kernels::score_fields_omp(signals, index, alpha);
}

}  // namespace catattr
