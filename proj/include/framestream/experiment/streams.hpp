// Copyright 2026 The Framestream Authors
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

#include "framestream/engine/types.hpp"

namespace framestream::experiment {

inline constexpr const char* kGeometryStream = "geometry";
inline constexpr const char* kHighVoltageStream = "hv";
inline constexpr const char* kEventStream = "event";

/// The example experiment's three streams. Geometry is looked up on demand,
/// events arrive sequentially, and the high-voltage stream can be run either
/// way to exercise both scheduling paths. All three are of interest.
struct ExperimentStreamSet {
  engine::StreamDescriptor geometry;
  engine::StreamDescriptor highVoltage;
  engine::StreamDescriptor event;
};

inline ExperimentStreamSet makeExperimentStreams(engine::StreamMode hvMode = engine::StreamMode::Sequential) {
  return ExperimentStreamSet{
      {{kGeometryStream, 0}, engine::StreamMode::Lookup, true},
      {{kHighVoltageStream, 0}, hvMode, true},
      {{kEventStream, 0}, engine::StreamMode::Sequential, true},
  };
}

}  // namespace framestream::experiment
