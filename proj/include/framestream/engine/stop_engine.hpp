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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "framestream/engine/frame.hpp"
#include "framestream/engine/stop_source.hpp"
#include "framestream/engine/types.hpp"
#include "framestream/loop/source.hpp"

namespace framestream::engine {

class DuplicateStream : public std::logic_error {
 public:
  explicit DuplicateStream(const std::string& name)
      : std::logic_error("stream '" + name + "' is already registered") {}
};

class EngineAlreadyRunning : public std::logic_error {
 public:
  EngineAlreadyRunning() : std::logic_error("sources cannot be registered once scheduling has started") {}
};

/// Merges the registered stop sources into one time-ordered sequence of
/// stops and assembles the frame for each.
///
/// Scheduling: the candidate active stop is the minimum-time pending active
/// stop over all sequential streams of interest. Before it is delivered,
/// every not-yet-delivered passive change at or before its time goes out
/// first, earliest first. Ties are deterministic: passive before active at
/// equal time, then lower registration index. The run ends when the
/// sequential sources are exhausted; passive changes after the final active
/// stop are never delivered.
///
/// Single-owner, single-threaded during a run; sources are queried strictly
/// one at a time.
class StopEngine {
 public:
  /// Adds a source under its descriptor's stream name. Registration order
  /// assigns the dense registrationIndex used for tie-breaking. Once
  /// nextStop has been called the engine rejects further registrations.
  std::size_t registerStopSource(const std::shared_ptr<StopSource>& source);

  /// Next stop to build a frame for, or nullopt when the run is over.
  std::optional<Stop> nextStop();

  /// Phase one of delivery for the stop just returned by nextStop: the
  /// factory creates the empty frame, every registered source (of interest
  /// or not) loads its latest record at or before the stop time, and the
  /// frame is sealed.
  std::shared_ptr<const Frame> buildFrame(const Stop& stop, FrameFactory& factory);

  const std::vector<std::shared_ptr<StopSource>>& sources() const { return sources_; }

  bool started() const { return started_; }

  /// Loop lifecycle forwarding to every source, in registration order.
  void notifyConfigured(const loop::ConfigurationEvent& event);
  void notifyReconfigured(const loop::ConfigurationEvent& event);
  void notifyResumed();
  void notifySuspended();
  void notifyFinished();

 private:
  std::vector<std::shared_ptr<StopSource>> sources_;
  std::vector<std::optional<TimeStamp>> lastActiveTime_;  // per source, order guard
  std::optional<TimeStamp> lastDeliveredTime_;
  std::optional<Stop> pendingBuild_;
  bool started_ = false;
};

/// Adapts an engine to the record-loop source contract: each next() is
/// nextStop + buildFrame, end-of-source when the stops run out. Records are
/// handles to sealed frames. Loop lifecycle notifications are forwarded to
/// the engine's sources.
class FrameRecordSource final : public loop::RecordSource {
 public:
  FrameRecordSource(std::shared_ptr<StopEngine> engine, std::shared_ptr<FrameFactory> factory);

  std::optional<loop::RecordHandle> next() override;

  void loopConfigured(const loop::ConfigurationEvent& event) override;
  void loopReconfigured(const loop::ConfigurationEvent& event) override;
  void loopResumed() override;
  void loopSuspended() override;
  void loopFinished() override;

 private:
  std::shared_ptr<StopEngine> engine_;
  std::shared_ptr<FrameFactory> factory_;
};

/// Convenience builder for the adapter.
std::shared_ptr<loop::RecordSource> frameSource(std::shared_ptr<StopEngine> engine,
                                                std::shared_ptr<FrameFactory> factory);

}  // namespace framestream::engine
