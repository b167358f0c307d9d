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

#include <nlohmann/json.hpp>

#include "catattr/abstention.hpp"
#include "catattr/backend.hpp"
#include "catattr/frames.hpp"
#include "catattr/pipeline.hpp"
#include "catattr/similarity.hpp"

// nlohmann::json conversions for the record types that are persisted or
// served. Every from_json is the exact inverse of its to_json.
namespace catattr {

void to_json(nlohmann::json& j, const Dimensions& d);
void from_json(const nlohmann::json& j, Dimensions& d);

void to_json(nlohmann::json& j, const FrameSamplingPlan& plan);
void from_json(const nlohmann::json& j, FrameSamplingPlan& plan);

void to_json(nlohmann::json& j, const BackendDescriptor& d);
void from_json(const nlohmann::json& j, BackendDescriptor& d);

void to_json(nlohmann::json& j, const Signal& s);
void from_json(const nlohmann::json& j, Signal& s);

void to_json(nlohmann::json& j, const SignalBundle& b);
void from_json(const nlohmann::json& j, SignalBundle& b);

void to_json(nlohmann::json& j, const FieldScore& f);
void from_json(const nlohmann::json& j, FieldScore& f);

void to_json(nlohmann::json& j, const ThresholdCheck& c);
void from_json(const nlohmann::json& j, ThresholdCheck& c);

void to_json(nlohmann::json& j, const DecisionRecord& r);
void from_json(const nlohmann::json& j, DecisionRecord& r);

void to_json(nlohmann::json& j, const PipelineResult& r);
void from_json(const nlohmann::json& j, PipelineResult& r);

}  // namespace catattr
