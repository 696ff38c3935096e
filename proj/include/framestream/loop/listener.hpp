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

#include <any>
#include <cassert>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace framestream::loop {

/// Lifecycle states of a record listener.
///
/// A listener starts Dormant, becomes Configured when a loop is about to
/// begin, moves to Processing on the first record, and is Suspended when the
/// loop pauses. From Suspended it can resume or reconfigure back to
/// Configured, or finish back to Dormant.
enum class ListenerState : std::uint8_t {
  Dormant,
  Configured,
  Processing,
  Suspended,
};

/// The six message kinds a loop can send to a listener.
enum class MessageKind : std::uint8_t {
  Configure,
  Reconfigure,
  Resume,
  Suspend,
  Finish,
  RecordSupplied,
};

const char* toString(ListenerState state);
const char* toString(MessageKind kind);

/// Opaque handle to one record as seen by the loop. The loop never inspects
/// it; listeners downcast to whatever their source supplies (a frame, in the
/// stop engine).
using RecordHandle = std::any;

/// Carries the input parameters a listener should read when it is configured
/// or reconfigured. Parameter names are unique within one event.
class ConfigurationEvent {
 public:
  ConfigurationEvent() = default;
  explicit ConfigurationEvent(std::map<std::string, std::string> parameters)
      : parameters_(std::move(parameters)) {}

  const std::map<std::string, std::string>& parameters() const { return parameters_; }

  std::optional<std::string> parameter(const std::string& name) const {
    auto it = parameters_.find(name);
    if (it == parameters_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::map<std::string, std::string> parameters_;
};

/// Bookkeeping event attached to resume, suspend and finish messages.
/// recordsSuppliedSoFar is cumulative over the lifetime of the owning loop,
/// so it is non-decreasing across every event the loop emits.
class RecordEvent {
 public:
  RecordEvent(std::uint64_t recordsSuppliedSoFar, std::uint64_t loopId)
      : recordsSuppliedSoFar_(recordsSuppliedSoFar), loopId_(loopId) {}

  std::uint64_t recordsSuppliedSoFar() const { return recordsSuppliedSoFar_; }
  std::uint64_t loopId() const { return loopId_; }

 private:
  std::uint64_t recordsSuppliedSoFar_ = 0;
  std::uint64_t loopId_ = 0;
};

/// Delivery of one record. Sequence numbers start at 1 and increase by
/// exactly 1 per delivery within one loop phase (configure/resume .. suspend).
class RecordSuppliedEvent {
 public:
  RecordSuppliedEvent(RecordHandle record, std::uint64_t sequenceNumber)
      : record_(std::move(record)), sequenceNumber_(sequenceNumber) {}

  const RecordHandle& record() const { return record_; }
  std::uint64_t sequenceNumber() const { return sequenceNumber_; }

 private:
  RecordHandle record_;
  std::uint64_t sequenceNumber_ = 1;
};

/// A message kind paired with the payload that kind carries:
/// Configure/Reconfigure -> ConfigurationEvent, RecordSupplied ->
/// RecordSuppliedEvent, Resume/Suspend/Finish -> RecordEvent. Only the named
/// factories can build one, so the pairing always holds.
class LoopMessage {
 public:
  static LoopMessage configure(ConfigurationEvent event);
  static LoopMessage reconfigure(ConfigurationEvent event);
  static LoopMessage resume(RecordEvent event);
  static LoopMessage suspend(RecordEvent event);
  static LoopMessage finish(RecordEvent event);
  static LoopMessage recordSupplied(RecordSuppliedEvent event);

  MessageKind kind() const { return kind_; }

  const ConfigurationEvent& configuration() const { return std::get<ConfigurationEvent>(payload_); }
  const RecordEvent& record() const { return std::get<RecordEvent>(payload_); }
  const RecordSuppliedEvent& supplied() const { return std::get<RecordSuppliedEvent>(payload_); }

 private:
  using Payload = std::variant<ConfigurationEvent, RecordEvent, RecordSuppliedEvent>;

  LoopMessage(MessageKind kind, Payload payload) : kind_(kind), payload_(std::move(payload)) {}

  MessageKind kind_;
  Payload payload_;
};

/// Raised when a message arrives that has no edge in the lifecycle state
/// machine. The listener's state is left untouched and its handler is not
/// invoked.
class IllegalTransition : public std::logic_error {
 public:
  IllegalTransition(ListenerState state, MessageKind kind);

  ListenerState state() const { return state_; }
  MessageKind kind() const { return kind_; }

 private:
  ListenerState state_;
  MessageKind kind_;
};

/// Returns the state reached by sending `kind` in `state`, or nullopt when no
/// such edge exists. The legal edges are:
///
///   Dormant    --Configure-->      Configured
///   Configured --RecordSupplied--> Processing
///   Configured --Suspend-->        Suspended   (a zero-record loop still ends cleanly)
///   Processing --RecordSupplied--> Processing
///   Processing --Suspend-->        Suspended
///   Suspended  --Resume-->         Configured
///   Suspended  --Reconfigure-->    Configured
///   Suspended  --Finish-->         Dormant
std::optional<ListenerState> transitionTarget(ListenerState state, MessageKind kind);

class RecordListener;

/// Applies exactly one legal transition to the listener and invokes the
/// matching handler; throws IllegalTransition otherwise. This is the only
/// way a listener's state or handlers are ever reached.
ListenerState dispatchMessage(RecordListener& listener, const LoopMessage& message);

/// The contract every analysis class implements to take part in a record
/// loop. Handlers are protected: they run only through dispatchMessage, which
/// enforces the lifecycle state machine, so an implementation never has to
/// defend against out-of-order messages.
///
/// resume guarantees the configuration parameters have not changed since the
/// previous configure/reconfigure; reconfigure signals they may have, and the
/// new parameter set fully replaces the old one.
class RecordListener {
 public:
  RecordListener() = default;
  RecordListener(const RecordListener&) = delete;
  RecordListener& operator=(const RecordListener&) = delete;

  // A listener should be destroyed only once it is back in Dormant.
  virtual ~RecordListener() { assert(state_ == ListenerState::Dormant || std::uncaught_exceptions() > 0); }

  ListenerState state() const { return state_; }

  /// Number of leaf listeners behind this handle (composites report the sum
  /// over their children).
  virtual std::size_t listenerCount() const { return 1; }

  /// Cumulative number of records this listener tree has vetoed.
  virtual std::uint64_t vetoCount() const { return 0; }

 protected:
  virtual void configure(const ConfigurationEvent&) {}
  virtual void reconfigure(const ConfigurationEvent&) {}
  virtual void resume(const RecordEvent&) {}
  virtual void suspend(const RecordEvent&) {}
  virtual void finish(const RecordEvent&) {}
  virtual void recordSupplied(const RecordSuppliedEvent&) {}

 private:
  friend ListenerState dispatchMessage(RecordListener&, const LoopMessage&);

  ListenerState state_ = ListenerState::Dormant;
};

}  // namespace framestream::loop
