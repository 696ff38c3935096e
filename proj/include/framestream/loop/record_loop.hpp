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

#include <cstdint>
#include <memory>
#include <optional>

#include "framestream/loop/listener.hpp"
#include "framestream/loop/source.hpp"

namespace framestream::loop {

/// Thrown by a listener handler to end the whole loop early. The loop
/// suspends its listener and reports EndReason::Aborted; the exception does
/// not escape the loop.
class LoopAbort : public std::exception {
 public:
  const char* what() const noexcept override { return "loop aborted by listener"; }
};

enum class EndReason : std::uint8_t {
  SourceExhausted,
  LimitReached,
  Aborted,
};

const char* toString(EndReason reason);

/// Outcome of one processing phase.
struct LoopReport {
  std::uint64_t recordsSupplied = 0;   ///< records delivered during this phase
  std::size_t listenersInvoked = 0;    ///< leaf listeners behind the root handle
  std::uint64_t vetoCount = 0;         ///< records vetoed during this phase
  EndReason endReason = EndReason::SourceExhausted;
};

/// Drives records from one source to one listener tree, enforcing the
/// listener lifecycle at every step. A loop owns its source and listener for
/// its whole life; reconfiguring never swaps the source.
///
/// One phase is: an opening message (configure on the first run, resume or
/// reconfigure afterwards), zero or more recordSupplied deliveries, then
/// suspend. finish() closes the loop and returns the listener to dormant. The
/// trace every listener observes over a full life is therefore
///
///   configure (recordSupplied)* suspend
///   ((resume|reconfigure) (recordSupplied)* suspend)* finish
///
/// If the source fails mid-pull the loop suspends its listener before letting
/// the error escape, so listeners are never stranded in Processing.
///
/// Single-threaded contract: one loop owns its listeners and source, and no
/// handler is ever invoked reentrantly or from two activities at once.
class RecordLoop {
 public:
  RecordLoop(std::shared_ptr<RecordSource> source, std::shared_ptr<RecordListener> listener);

  /// First phase: sends configure, then pumps records. The listener must be
  /// dormant.
  LoopReport run(const ConfigurationEvent& config, std::optional<std::uint64_t> limit = std::nullopt);

  /// Continues a suspended loop with unchanged parameters.
  LoopReport resume(std::optional<std::uint64_t> limit = std::nullopt);

  /// Continues a suspended loop with a replacement parameter set.
  LoopReport reconfigure(const ConfigurationEvent& config, std::optional<std::uint64_t> limit = std::nullopt);

  /// Sends finish; the listener returns to dormant and may emit its summary
  /// from the handler.
  void finish();

  std::uint64_t loopId() const { return loopId_; }
  std::uint64_t recordsSupplied() const { return recordsSupplied_; }

  const std::shared_ptr<RecordListener>& listener() const { return listener_; }

 private:
  LoopReport pump(const LoopMessage& opening, std::optional<std::uint64_t> limit);
  RecordEvent makeRecordEvent() const { return RecordEvent(recordsSupplied_, loopId_); }

  std::shared_ptr<RecordSource> source_;
  std::shared_ptr<RecordListener> listener_;
  std::uint64_t loopId_;
  std::uint64_t recordsSupplied_ = 0;  // cumulative across phases
};

}  // namespace framestream::loop
