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

#include <filesystem>
#include <memory>

#include "framestream/engine/stop_source.hpp"

namespace framestream::ingest {

/// Loads a record file and wraps it as a stop source for the descriptor's
/// stream. Sequential streams must be non-decreasing in time; lookup streams
/// may arrive in any order. Every record's stream field must match the
/// descriptor's name.
std::shared_ptr<engine::StopSource> fileStopSource(const std::filesystem::path& path,
                                                   const engine::StreamDescriptor& descriptor);

}  // namespace framestream::ingest
