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

#include <memory>
#include <string_view>

#include "framestream/engine/frame.hpp"
#include "framestream/loop/listener.hpp"

namespace framestream::experiment {

/// Which per-stream handler a frame is routed to.
enum class StreamHandler {
  Geometry,
  HighVoltage,
  Event,
  Other,
};

const char* toString(StreamHandler handler);

/// Maps a driving stream name onto the handler that receives the frame.
/// Unknown names fall through to Other rather than failing; an experiment
/// may pick up streams it never asked for when sources are shared.
StreamHandler handlerFor(std::string_view streamName);

/// Analysis code written against the experiment vocabulary. One handler per
/// known stream plus a catch-all; every frame delivered by the engine ends
/// up in exactly one of them, chosen by the driving stop's stream.
///
/// Lifecycle notifications mirror the generic listener protocol but arrive
/// pre-unwrapped, so subclasses never deal with message plumbing.
class ExperimentListener {
public:
  virtual ~ExperimentListener() = default;

  virtual void geometry(const engine::Frame& frame) = 0;
  virtual void highVoltage(const engine::Frame& frame) = 0;
  virtual void event(const engine::Frame& frame) = 0;
  virtual void otherStream(const engine::Frame& frame) = 0;

  virtual void configure(const loop::ConfigurationEvent&) {}
  virtual void reconfigure(const loop::ConfigurationEvent&) {}
  virtual void resume(const loop::RecordEvent&) {}
  virtual void suspend(const loop::RecordEvent&) {}
  virtual void finish(const loop::RecordEvent&) {}
};

/// Routing core shared by the plugin below and by tests that want to drive
/// dispatch without a record loop. Routes exactly one handler call per frame.
class FrameDispatcher {
public:
  explicit FrameDispatcher(std::shared_ptr<ExperimentListener> target);

  /// Routes by frame.drivingStop().stream.name and returns the handler that
  /// was invoked.
  StreamHandler dispatchFrame(const engine::Frame& frame);

  ExperimentListener& target() { return *target_; }

private:
  std::shared_ptr<ExperimentListener> target_;
};

/// Adapts an ExperimentListener to the generic record-loop protocol. Records
/// must carry frames (see frameOf); anything else is rejected.
class ExperimentPlugin final : public loop::RecordListener {
public:
  explicit ExperimentPlugin(std::shared_ptr<ExperimentListener> target);

protected:
  void configure(const loop::ConfigurationEvent& event) override;
  void reconfigure(const loop::ConfigurationEvent& event) override;
  void resume(const loop::RecordEvent& event) override;
  void suspend(const loop::RecordEvent& event) override;
  void finish(const loop::RecordEvent& event) override;
  void recordSupplied(const loop::RecordSuppliedEvent& event) override;

private:
  FrameDispatcher dispatcher_;
};

/// Wraps experiment-level analysis code for use in a generic listener tree.
std::shared_ptr<loop::RecordListener> adaptListener(std::shared_ptr<ExperimentListener> target);

}  // namespace framestream::experiment
