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

#include "framestream/experiment/analyses.hpp"

#include "framestream/experiment/streams.hpp"

namespace framestream::experiment {

namespace {

int slotOf(std::string_view streamName) {
  if (streamName == kGeometryStream) return 0;
  if (streamName == kHighVoltageStream) return 1;
  if (streamName == kEventStream) return 2;
  return -1;
}

}  // namespace

std::uint64_t AnalysisSummary::totalFrames() const {
  std::uint64_t total = 0;
  for (const auto& [stream, count] : framesByStream) {
    (void)stream;
    total += count;
  }
  return total;
}

void writeSummary(std::ostream& out, const std::string& listenerName, const AnalysisSummary& summary) {
  out << "listener=" << listenerName << '\n';

  // A std::map keeps the combined key set sorted for us; "custom" keys land
  // interleaved with the frames.* and time.* keys as plain lexicographic
  // order demands.
  std::map<std::string, std::string> lines;
  for (const auto& [stream, count] : summary.framesByStream) {
    lines["frames." + stream] = std::to_string(count);
  }
  lines["frames.total"] = std::to_string(summary.totalFrames());
  if (summary.firstTime) {
    lines["time.first"] = std::to_string(summary.firstTime->ticks);
  }
  if (summary.lastTime) {
    lines["time.last"] = std::to_string(summary.lastTime->ticks);
  }
  for (const auto& [key, value] : summary.custom) {
    lines[key] = value;
  }
  for (const auto& [key, value] : lines) {
    out << key << '=' << value << '\n';
  }
}

SampleAnalysis::SampleAnalysis(std::string name) : name_(std::move(name)) {}

void SampleAnalysis::record(const engine::Frame& frame) {
  ++summary_.framesByStream[frame.drivingStop().stream.name];
  if (!summary_.firstTime) {
    summary_.firstTime = frame.time();
  }
  summary_.lastTime = frame.time();
  observe(frame);
}

void SampleAnalysis::geometry(const engine::Frame& frame) { record(frame); }
void SampleAnalysis::highVoltage(const engine::Frame& frame) { record(frame); }
void SampleAnalysis::event(const engine::Frame& frame) { record(frame); }
void SampleAnalysis::otherStream(const engine::Frame& frame) { record(frame); }

void SampleAnalysis::configure(const loop::ConfigurationEvent&) {
  summary_ = AnalysisSummary{};
  reset();
}

void SampleAnalysis::reconfigure(const loop::ConfigurationEvent&) {
  summary_ = AnalysisSummary{};
  reset();
}

EventCounter::EventCounter() : SampleAnalysis("eventCounter") {}

void EventCounter::observe(const engine::Frame& frame) {
  if (frame.drivingStop().stream.name != kEventStream) return;
  ++events_;
  mutableSummary().custom["events.count"] = std::to_string(events_);
}

void EventCounter::reset() {
  events_ = 0;
}

GeometryChangeLogger::GeometryChangeLogger() : SampleAnalysis("geometryChangeLogger") {}

void GeometryChangeLogger::observe(const engine::Frame& frame) {
  if (frame.drivingStop().stream.name != kGeometryStream) return;
  const engine::Record* record = frame.find(kGeometryStream);
  // A geometry stop implies a geometry record at the stop time; guard anyway
  // so a custom factory bug degrades to a missed change, not a crash.
  if (record == nullptr) return;
  if (!changes_.empty() && changes_.back().second == record->payload) return;
  changes_.emplace_back(record->time, record->payload);
  mutableSummary().custom["geometry.changes"] = std::to_string(changes_.size());
  mutableSummary().custom["geometry.last"] = record->payload;
}

void GeometryChangeLogger::reset() {
  changes_.clear();
}

HvMonitor::HvMonitor() : SampleAnalysis("hvMonitor") {}

void HvMonitor::observe(const engine::Frame& frame) {
  if (frame.drivingStop().stream.name != kEventStream) return;
  const engine::Record* hv = frame.find(kHighVoltageStream);
  if (hv != nullptr) {
    ++withHv_;
    mutableSummary().custom["hv.last"] = hv->payload;
  } else {
    ++withoutHv_;
  }
  mutableSummary().custom["hv.eventsWith"] = std::to_string(withHv_);
  mutableSummary().custom["hv.eventsWithout"] = std::to_string(withoutHv_);
}

void HvMonitor::reset() {
  withHv_ = 0;
  withoutHv_ = 0;
}

SampleAnalysisBundle sampleAnalyses() {
  return SampleAnalysisBundle{
      std::make_shared<EventCounter>(),
      std::make_shared<GeometryChangeLogger>(),
      std::make_shared<HvMonitor>(),
  };
}

SlotFrame::SlotFrame(const engine::Stop& drivingStop) : engine::Frame(drivingStop) {}

const engine::Record* SlotFrame::find(std::string_view streamName) const {
  const int slot = slotOf(streamName);
  if (slot >= 0) {
    return slots_[slot] ? &*slots_[slot] : nullptr;
  }
  const auto it = overflow_.find(streamName);
  return it == overflow_.end() ? nullptr : &it->second;
}

std::vector<std::reference_wrapper<const engine::Record>> SlotFrame::contents() const {
  // Assemble in lexicographic stream-name order. The known slots sort as
  // event < geometry < hv; overflow entries are merged in by name.
  std::map<std::string_view, const engine::Record*> ordered;
  for (const auto& slot : slots_) {
    if (slot) ordered[slot->stream.name] = &*slot;
  }
  for (const auto& [name, record] : overflow_) {
    ordered[name] = &record;
  }
  std::vector<std::reference_wrapper<const engine::Record>> result;
  result.reserve(ordered.size());
  for (const auto& [name, record] : ordered) {
    (void)name;
    result.emplace_back(*record);
  }
  return result;
}

void SlotFrame::doInsert(engine::Record record) {
  const int slot = slotOf(record.stream.name);
  if (slot >= 0) {
    slots_[slot] = std::move(record);
  } else {
    std::string name = record.stream.name;
    overflow_.insert_or_assign(std::move(name), std::move(record));
  }
}

std::unique_ptr<engine::Frame> ExperimentFrameFactory::createFrame(const engine::Stop& drivingStop) {
  return std::make_unique<SlotFrame>(drivingStop);
}

}  // namespace framestream::experiment
