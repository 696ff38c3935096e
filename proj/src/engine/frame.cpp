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

#include "framestream/engine/frame.hpp"

namespace framestream::engine {

const char* toString(StreamMode mode) {
  switch (mode) {
    case StreamMode::Sequential: return "sequential";
    case StreamMode::Lookup: return "lookup";
  }
  return "unknown";
}

const char* toString(StopKind kind) {
  switch (kind) {
    case StopKind::Active: return "active";
    case StopKind::Passive: return "passive";
  }
  return "unknown";
}

const Record* BasicFrame::find(std::string_view streamName) const {
  auto it = records_.find(streamName);
  return it == records_.end() ? nullptr : &it->second;
}

std::vector<std::reference_wrapper<const Record>> BasicFrame::contents() const {
  std::vector<std::reference_wrapper<const Record>> out;
  out.reserve(records_.size());
  for (const auto& [name, record] : records_) out.emplace_back(record);
  return out;
}

void BasicFrame::doInsert(Record record) {
  auto name = record.stream.name;
  records_.insert_or_assign(std::move(name), std::move(record));
}

std::unique_ptr<Frame> BasicFrameFactory::createFrame(const Stop& stop) {
  return std::make_unique<BasicFrame>(stop);
}

std::shared_ptr<const Frame> frameOf(const loop::RecordHandle& record) {
  const auto* frame = std::any_cast<std::shared_ptr<const Frame>>(&record);
  if (!frame) throw std::invalid_argument("record handle does not hold a frame");
  return *frame;
}

}  // namespace framestream::engine
