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

#include "framestream/engine/stop_engine.hpp"

#include <utility>

namespace framestream::engine {

std::size_t StopEngine::registerStopSource(const std::shared_ptr<StopSource>& source) {
  if (!source) throw std::invalid_argument("cannot register a null stop source");
  if (started_) throw EngineAlreadyRunning();
  const auto& name = source->descriptor().id.name;
  if (name.empty()) throw std::invalid_argument("stream name must be non-empty");
  for (const auto& existing : sources_) {
    if (existing->descriptor().id.name == name) throw DuplicateStream(name);
  }
  const std::size_t index = sources_.size();
  source->descriptor_.id.registrationIndex = index;
  sources_.push_back(source);
  lastActiveTime_.emplace_back();
  return index;
}

std::optional<Stop> StopEngine::nextStop() {
  started_ = true;

  // Minimum-time pending active stop; registration order makes strict < keep
  // the lower index on ties.
  std::optional<Stop> active;
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    const auto& descriptor = sources_[i]->descriptor();
    if (descriptor.mode != StreamMode::Sequential || !descriptor.ofInterest) continue;
    auto candidate = sources_[i]->nextActiveStop();
    if (!candidate) continue;
    if (lastActiveTime_[i] && candidate->time < *lastActiveTime_[i]) {
      throw loop::SourceError("sequential stream '" + descriptor.id.name + "' went backwards in time");
    }
    if (!active || candidate->time < active->time) active = *candidate;
  }
  if (!active) {
    // Sequential sources exhausted; passive changes past the final active
    // stop are never delivered.
    pendingBuild_.reset();
    return std::nullopt;
  }

  std::optional<Stop> passive;
  for (const auto& source : sources_) {
    if (!source->descriptor().ofInterest) continue;
    auto candidate = source->earliestPassiveStop(*active);
    if (!candidate || candidate->time > active->time) continue;
    if (!passive || candidate->time < passive->time) passive = *candidate;
  }

  Stop chosen = passive ? *passive : *active;
  auto& source = *sources_[chosen.stream.registrationIndex];
  if (passive) {
    source.consumePassive(chosen);
  } else {
    source.consumeActive(chosen);
    lastActiveTime_[chosen.stream.registrationIndex] = chosen.time;
  }

  if (lastDeliveredTime_ && chosen.time < *lastDeliveredTime_) {
    throw std::logic_error("stop scheduling went backwards in time");
  }
  lastDeliveredTime_ = chosen.time;
  pendingBuild_ = chosen;
  return chosen;
}

std::shared_ptr<const Frame> StopEngine::buildFrame(const Stop& stop, FrameFactory& factory) {
  if (!pendingBuild_ || !(*pendingBuild_ == stop)) {
    throw std::logic_error("buildFrame expects the stop just returned by nextStop");
  }
  pendingBuild_.reset();

  std::unique_ptr<Frame> frame = factory.createFrame(stop);
  if (!frame) throw FactoryError("factory returned no frame");
  if (frame->time() != stop.time || !(frame->drivingStop() == stop)) {
    throw FactoryError("factory produced a frame for a different stop");
  }
  if (!frame->contents().empty()) throw FactoryError("factory produced a non-empty frame");

  for (const auto& source : sources_) {
    source->fillFrame(*frame);
  }
  frame->seal();
  return std::shared_ptr<const Frame>(std::move(frame));
}

void StopEngine::notifyConfigured(const loop::ConfigurationEvent& event) {
  for (const auto& source : sources_) source->loopConfigured(event);
}

void StopEngine::notifyReconfigured(const loop::ConfigurationEvent& event) {
  for (const auto& source : sources_) source->loopReconfigured(event);
}

void StopEngine::notifyResumed() {
  for (const auto& source : sources_) source->loopResumed();
}

void StopEngine::notifySuspended() {
  for (const auto& source : sources_) source->loopSuspended();
}

void StopEngine::notifyFinished() {
  for (const auto& source : sources_) source->loopFinished();
}

FrameRecordSource::FrameRecordSource(std::shared_ptr<StopEngine> engine, std::shared_ptr<FrameFactory> factory)
    : engine_(std::move(engine)), factory_(std::move(factory)) {
  if (!engine_ || !factory_) throw std::invalid_argument("frame source requires an engine and a factory");
}

std::optional<loop::RecordHandle> FrameRecordSource::next() {
  auto stop = engine_->nextStop();
  if (!stop) return std::nullopt;
  return loop::RecordHandle(engine_->buildFrame(*stop, *factory_));
}

void FrameRecordSource::loopConfigured(const loop::ConfigurationEvent& event) { engine_->notifyConfigured(event); }
void FrameRecordSource::loopReconfigured(const loop::ConfigurationEvent& event) {
  engine_->notifyReconfigured(event);
}
void FrameRecordSource::loopResumed() { engine_->notifyResumed(); }
void FrameRecordSource::loopSuspended() { engine_->notifySuspended(); }
void FrameRecordSource::loopFinished() { engine_->notifyFinished(); }

std::shared_ptr<loop::RecordSource> frameSource(std::shared_ptr<StopEngine> engine,
                                                std::shared_ptr<FrameFactory> factory) {
  return std::make_shared<FrameRecordSource>(std::move(engine), std::move(factory));
}

}  // namespace framestream::engine
