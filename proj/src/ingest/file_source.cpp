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

#include "framestream/ingest/file_source.hpp"

#include "framestream/ingest/record_file.hpp"

namespace framestream::ingest {

std::shared_ptr<engine::StopSource> fileStopSource(const std::filesystem::path& path,
                                                   const engine::StreamDescriptor& descriptor) {
  ParseOptions options;
  options.order = descriptor.mode == engine::StreamMode::Sequential ? TimeOrder::NonDecreasing
                                                                    : TimeOrder::Any;
  options.expectedStream = descriptor.id.name;
  return engine::makeMemoryStopSource(descriptor, parseRecordFile(path, options));
}

}  // namespace framestream::ingest
