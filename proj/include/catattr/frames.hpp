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

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace catattr {

struct Dimensions {
  int width = 0;
  int height = 0;
  friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

inline constexpr int kDefaultFrameCount = 8;
inline constexpr int kDefaultLongSide = 448;
inline constexpr std::int64_t kDefaultPixelBudget = 151'200;

/// Which frames to hand to the backend, and at what resolution. Decoding is
/// the backend's job; this only fixes the arithmetic.
struct FrameSamplingPlan {
  int frame_count = 0;
  std::vector<std::int64_t> frame_indices;  // strictly increasing
  std::vector<double> timestamps_s;         // frame_indices / fps
  int target_long_side = kDefaultLongSide;
  std::int64_t per_frame_pixel_budget = kDefaultPixelBudget;
  Dimensions source;
  Dimensions scaled;

  friend bool operator==(const FrameSamplingPlan&, const FrameSamplingPlan&) = default;
};

class FramePlanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evenly spaced indices round_half_up(k * (total_frames - 1) / (frame_count - 1))
/// for k = 0..frame_count-1 (just {0} for a single frame), and dimensions scaled
/// down so the long side is at most `long_side` and the area at most `budget`.
/// Sources already inside both limits keep their size.
FrameSamplingPlan plan_frames(std::int64_t total_frames, double fps, int frame_count, int long_side,
                              Dimensions source, std::int64_t budget);

}  // namespace catattr
