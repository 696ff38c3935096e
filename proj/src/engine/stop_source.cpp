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

#include "framestream/engine/stop_source.hpp"

#include <stdexcept>
#include <string>

namespace framestream::engine {

SequentialMemorySource::SequentialMemorySource(StreamDescriptor descriptor,
                                               std::vector<std::pair<TimeStamp, std::string>> records)
    : StopSource(std::move(descriptor)), records_(std::move(records)) {
  for (std::size_t i = 1; i < records_.size(); ++i) {
    if (records_[i].first < records_[i - 1].first) {
      throw loop::SourceError("sequential stream '" + this->descriptor().id.name +
                              "' has records out of time order");
    }
  }
}

Record SequentialMemorySource::makeRecord(std::size_t index) const {
  return Record{descriptor().id, records_[index].first, records_[index].second};
}

std::optional<Stop> SequentialMemorySource::nextActiveStop() {
  if (!descriptor().ofInterest) return std::nullopt;
  if (activeCursor_ >= records_.size()) return std::nullopt;
  return Stop{descriptor().id, records_[activeCursor_].first, StopKind::Active};
}

void SequentialMemorySource::consumeActive(const Stop& stop) {
  if (activeCursor_ >= records_.size() || stop.time != records_[activeCursor_].first) {
    throw std::logic_error("consumeActive does not match the pending record");
  }
  ++activeCursor_;
}

void SequentialMemorySource::fillFrame(Frame& frame) {
  while (fillCursor_ < records_.size() && records_[fillCursor_].first <= frame.time()) {
    lastFill_ = fillCursor_;
    ++fillCursor_;
  }
  if (lastFill_) frame.insert(makeRecord(*lastFill_));
}

StopSourceState SequentialMemorySource::state() const {
  StopSourceState s{descriptor(), std::nullopt, std::nullopt};
  if (activeCursor_ < records_.size()) s.pendingRecord = makeRecord(activeCursor_);
  if (activeCursor_ > 0) s.lastDeliveredTime = records_[activeCursor_ - 1].first;
  return s;
}

LookupMemorySource::LookupMemorySource(StreamDescriptor descriptor,
                                       std::vector<std::pair<TimeStamp, std::string>> records)
    : StopSource(std::move(descriptor)) {
  for (auto& [time, payload] : records) {
    table_.insert_or_assign(time, std::move(payload));
  }
}

std::optional<Stop> LookupMemorySource::earliestPassiveStop(const Stop& upcomingActive) {
  if (!descriptor().ofInterest) return std::nullopt;
  auto it = delivered_ ? table_.upper_bound(*delivered_) : table_.begin();
  if (it == table_.end() || it->first > upcomingActive.time) return std::nullopt;
  return Stop{descriptor().id, it->first, StopKind::Passive};
}

void LookupMemorySource::consumePassive(const Stop& stop) {
  delivered_ = stop.time;
}

void LookupMemorySource::fillFrame(Frame& frame) {
  auto it = table_.upper_bound(frame.time());
  if (it == table_.begin()) return;
  --it;
  frame.insert(Record{descriptor().id, it->first, it->second});
}

StopSourceState LookupMemorySource::state() const {
  StopSourceState s{descriptor(), std::nullopt, std::nullopt};
  s.lastDeliveredTime = delivered_;
  auto it = delivered_ ? table_.upper_bound(*delivered_) : table_.begin();
  if (it != table_.end()) s.pendingRecord = Record{descriptor().id, it->first, it->second};
  return s;
}

std::shared_ptr<StopSource> makeMemoryStopSource(StreamDescriptor descriptor, const std::vector<Record>& records) {
  std::vector<std::pair<TimeStamp, std::string>> pairs;
  pairs.reserve(records.size());
  for (const auto& record : records) {
    if (record.stream.name != descriptor.id.name) {
      throw loop::SourceError("record for stream '" + record.stream.name + "' supplied to stream '" +
                              descriptor.id.name + "'");
    }
    pairs.emplace_back(record.time, record.payload);
  }
  if (descriptor.mode == StreamMode::Sequential) {
    return std::make_shared<SequentialMemorySource>(std::move(descriptor), std::move(pairs));
  }
  return std::make_shared<LookupMemorySource>(std::move(descriptor), std::move(pairs));
}

}  // namespace framestream::engine
