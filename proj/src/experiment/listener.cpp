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

#include "framestream/experiment/listener.hpp"

#include <stdexcept>
#include <utility>

#include "framestream/experiment/streams.hpp"

namespace framestream::experiment {

const char* toString(StreamHandler handler) {
  switch (handler) {
    case StreamHandler::Geometry: return "Geometry";
    case StreamHandler::HighVoltage: return "HighVoltage";
    case StreamHandler::Event: return "Event";
    case StreamHandler::Other: return "Other";
  }
  return "?";
}

StreamHandler handlerFor(std::string_view streamName) {
  if (streamName == kGeometryStream) return StreamHandler::Geometry;
  if (streamName == kHighVoltageStream) return StreamHandler::HighVoltage;
  if (streamName == kEventStream) return StreamHandler::Event;
  return StreamHandler::Other;
}

FrameDispatcher::FrameDispatcher(std::shared_ptr<ExperimentListener> target)
    : target_(std::move(target)) {
  if (!target_) {
    throw std::invalid_argument("FrameDispatcher requires a listener");
  }
}

StreamHandler FrameDispatcher::dispatchFrame(const engine::Frame& frame) {
  const StreamHandler handler = handlerFor(frame.drivingStop().stream.name);
  switch (handler) {
    case StreamHandler::Geometry: target_->geometry(frame); break;
    case StreamHandler::HighVoltage: target_->highVoltage(frame); break;
    case StreamHandler::Event: target_->event(frame); break;
    case StreamHandler::Other: target_->otherStream(frame); break;
  }
  return handler;
}

ExperimentPlugin::ExperimentPlugin(std::shared_ptr<ExperimentListener> target)
    : dispatcher_(std::move(target)) {}

void ExperimentPlugin::configure(const loop::ConfigurationEvent& event) {
  dispatcher_.target().configure(event);
}

void ExperimentPlugin::reconfigure(const loop::ConfigurationEvent& event) {
  dispatcher_.target().reconfigure(event);
}

void ExperimentPlugin::resume(const loop::RecordEvent& event) {
  dispatcher_.target().resume(event);
}

void ExperimentPlugin::suspend(const loop::RecordEvent& event) {
  dispatcher_.target().suspend(event);
}

void ExperimentPlugin::finish(const loop::RecordEvent& event) {
  dispatcher_.target().finish(event);
}

void ExperimentPlugin::recordSupplied(const loop::RecordSuppliedEvent& event) {
  dispatcher_.dispatchFrame(*engine::frameOf(event.record()));
}

std::shared_ptr<loop::RecordListener> adaptListener(std::shared_ptr<ExperimentListener> target) {
  return std::make_shared<ExperimentPlugin>(std::move(target));
}

}  // namespace framestream::experiment
