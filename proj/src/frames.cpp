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

#include "catattr/frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace catattr {
namespace {

std::int64_t round_half_up_div(std::int64_t num, std::int64_t den) { return (2 * num + den) / (2 * den); }

int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

Dimensions scale_to_fit(Dimensions src, int long_side, std::int64_t budget) {
  const int longest = std::max(src.width, src.height);
  double scale = std::min(1.0, static_cast<double>(long_side) / longest);
  const double area = static_cast<double>(src.width) * src.height;
  scale = std::min(scale, std::sqrt(static_cast<double>(budget) / area));

  Dimensions out{std::max(1, round_half_up(src.width * scale)), std::max(1, round_half_up(src.height * scale))};
  // Rounding up can overshoot either limit by a pixel; shrink the long side
  // and re-derive the short one until both hold.
  while (std::max(out.width, out.height) > long_side ||
         static_cast<std::int64_t>(out.width) * out.height > budget) {
    if (src.width >= src.height) {
      out.width -= 1;
      out.height = std::max(1, round_half_up(static_cast<double>(out.width) * src.height / src.width));
    } else {
      out.height -= 1;
      out.width = std::max(1, round_half_up(static_cast<double>(out.height) * src.width / src.height));
    }
    if (out.width <= 1 && out.height <= 1) break;
  }
  return out;
}

}  // namespace

FrameSamplingPlan plan_frames(std::int64_t total_frames, double fps, int frame_count, int long_side,
                              Dimensions source, std::int64_t budget) {
  if (frame_count < 1) throw FramePlanError("frame_count must be at least 1");
  if (total_frames < frame_count) {
    throw FramePlanError("video has " + std::to_string(total_frames) + " frames but " +
                         std::to_string(frame_count) + " were requested; lower frame_count");
  }
  if (!(fps > 0.0)) throw FramePlanError("fps must be positive");
  if (source.width <= 0 || source.height <= 0) throw FramePlanError("source dimensions must be positive");
  if (long_side <= 0 || budget <= 0) throw FramePlanError("long side and pixel budget must be positive");

  FrameSamplingPlan plan;
  plan.frame_count = frame_count;
  plan.target_long_side = long_side;
  plan.per_frame_pixel_budget = budget;
  plan.source = source;
  plan.frame_indices.reserve(static_cast<std::size_t>(frame_count));
  if (frame_count == 1) {
    plan.frame_indices.push_back(0);
  } else {
    const std::int64_t span = total_frames - 1;
    const std::int64_t steps = frame_count - 1;
    for (std::int64_t k = 0; k < frame_count; ++k) plan.frame_indices.push_back(round_half_up_div(k * span, steps));
  }
  for (auto idx : plan.frame_indices) plan.timestamps_s.push_back(static_cast<double>(idx) / fps);
  plan.scaled = scale_to_fit(source, long_side, budget);
  return plan;
}

}  // namespace catattr
