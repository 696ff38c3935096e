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

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "framestream/engine/frame.hpp"
#include "framestream/engine/types.hpp"
#include "framestream/loop/listener.hpp"
#include "framestream/loop/source.hpp"

namespace framestream::engine {

/// Snapshot of one source's scheduling state, mainly for diagnostics and
/// tests. When both fields are present, pendingRecord.time is strictly after
/// lastDeliveredTime.
struct StopSourceState {
  StreamDescriptor descriptor;
  std::optional<Record> pendingRecord;
  std::optional<TimeStamp> lastDeliveredTime;
};

/// Reads record data for a single stream and answers the engine's two
/// scheduling queries: the next active stop it can read, and - given an
/// upcoming active stop - the earliest passive stop it can read. It also
/// loads its contribution into each frame being built.
///
/// The peek queries never consume; the engine calls consumeActive /
/// consumePassive for exactly the stops it delivers. Lifecycle notifications
/// from the owning loop are forwarded here in registration order.
class StopSource {
 public:
  explicit StopSource(StreamDescriptor descriptor) : descriptor_(std::move(descriptor)) {}
  virtual ~StopSource() = default;

  StopSource(const StopSource&) = delete;
  StopSource& operator=(const StopSource&) = delete;

  const StreamDescriptor& descriptor() const { return descriptor_; }

  /// Stop for the next unread record of a sequential stream of interest;
  /// nullopt when exhausted or when this source never drives the run.
  /// Repeated calls without consumption return the identical stop.
  virtual std::optional<Stop> nextActiveStop() { return std::nullopt; }

  /// Earliest not-yet-delivered record change with time <= upcomingActive.time,
  /// as a passive stop; nullopt when no such change exists.
  virtual std::optional<Stop> earliestPassiveStop(const Stop& upcomingActive) {
    (void)upcomingActive;
    return std::nullopt;
  }

  /// Marks the currently peeked active record as read.
  virtual void consumeActive(const Stop& stop) { (void)stop; }

  /// Marks the given passive change as delivered.
  virtual void consumePassive(const Stop& stop) { (void)stop; }

  /// Loads this stream's most recent record at or before frame.time(), if
  /// any, into the frame.
  virtual void fillFrame(Frame& frame) = 0;

  virtual StopSourceState state() const { return {descriptor_, std::nullopt, std::nullopt}; }

  /// Loop lifecycle notifications, forwarded by the engine. Defaults no-op.
  virtual void loopConfigured(const loop::ConfigurationEvent&) {}
  virtual void loopReconfigured(const loop::ConfigurationEvent&) {}
  virtual void loopResumed() {}
  virtual void loopSuspended() {}
  virtual void loopFinished() {}

 private:
  friend class StopEngine;

  StreamDescriptor descriptor_;
};

/// Sequential stream over an in-memory record list. Records must be in
/// non-decreasing time order; anything else is a SourceError. Each record of
/// a stream of interest yields exactly one active stop, consumed in order.
/// Frame fills track the latest record at or before the frame time,
/// independent of stop consumption.
class SequentialMemorySource : public StopSource {
 public:
  /// `records` are (time, payload) pairs in supply order.
  SequentialMemorySource(StreamDescriptor descriptor, std::vector<std::pair<TimeStamp, std::string>> records);

  std::optional<Stop> nextActiveStop() override;
  void consumeActive(const Stop& stop) override;
  void fillFrame(Frame& frame) override;
  StopSourceState state() const override;

 private:
  Record makeRecord(std::size_t index) const;

  std::vector<std::pair<TimeStamp, std::string>> records_;
  std::size_t activeCursor_ = 0;
  std::size_t fillCursor_ = 0;
  std::optional<std::size_t> lastFill_;
};

/// Lookup stream over a preloaded time-indexed record table, the on-demand
/// (database-style) supply path. A later entry at the same time replaces the
/// earlier one, so change times are strictly increasing. Passive stops are
/// handed out change by change, tracked by a delivered-time watermark.
class LookupMemorySource : public StopSource {
 public:
  LookupMemorySource(StreamDescriptor descriptor, std::vector<std::pair<TimeStamp, std::string>> records);

  std::optional<Stop> earliestPassiveStop(const Stop& upcomingActive) override;
  void consumePassive(const Stop& stop) override;
  void fillFrame(Frame& frame) override;
  StopSourceState state() const override;

 private:
  std::map<TimeStamp, std::string> table_;
  std::optional<TimeStamp> delivered_;
};

/// Builds the memory source matching descriptor.mode from parsed records.
/// Records must all belong to the descriptor's stream.
std::shared_ptr<StopSource> makeMemoryStopSource(StreamDescriptor descriptor, const std::vector<Record>& records);

}  // namespace framestream::engine
