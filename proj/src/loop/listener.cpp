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

#include "framestream/loop/listener.hpp"

namespace framestream::loop {

const char* toString(ListenerState state) {
  switch (state) {
    case ListenerState::Dormant: return "dormant";
    case ListenerState::Configured: return "configured";
    case ListenerState::Processing: return "processing";
    case ListenerState::Suspended: return "suspended";
  }
  return "unknown";
}

const char* toString(MessageKind kind) {
  switch (kind) {
    case MessageKind::Configure: return "configure";
    case MessageKind::Reconfigure: return "reconfigure";
    case MessageKind::Resume: return "resume";
    case MessageKind::Suspend: return "suspend";
    case MessageKind::Finish: return "finish";
    case MessageKind::RecordSupplied: return "recordSupplied";
  }
  return "unknown";
}

LoopMessage LoopMessage::configure(ConfigurationEvent event) {
  return LoopMessage(MessageKind::Configure, std::move(event));
}

LoopMessage LoopMessage::reconfigure(ConfigurationEvent event) {
  return LoopMessage(MessageKind::Reconfigure, std::move(event));
}

LoopMessage LoopMessage::resume(RecordEvent event) {
  return LoopMessage(MessageKind::Resume, event);
}

LoopMessage LoopMessage::suspend(RecordEvent event) {
  return LoopMessage(MessageKind::Suspend, event);
}

LoopMessage LoopMessage::finish(RecordEvent event) {
  return LoopMessage(MessageKind::Finish, event);
}

LoopMessage LoopMessage::recordSupplied(RecordSuppliedEvent event) {
  return LoopMessage(MessageKind::RecordSupplied, std::move(event));
}

IllegalTransition::IllegalTransition(ListenerState state, MessageKind kind)
    : std::logic_error(std::string("illegal transition: ") + toString(kind) + " while " + toString(state)),
      state_(state),
      kind_(kind) {}

std::optional<ListenerState> transitionTarget(ListenerState state, MessageKind kind) {
  switch (state) {
    case ListenerState::Dormant:
      if (kind == MessageKind::Configure) return ListenerState::Configured;
      break;
    case ListenerState::Configured:
      if (kind == MessageKind::RecordSupplied) return ListenerState::Processing;
      if (kind == MessageKind::Suspend) return ListenerState::Suspended;
      break;
    case ListenerState::Processing:
      if (kind == MessageKind::RecordSupplied) return ListenerState::Processing;
      if (kind == MessageKind::Suspend) return ListenerState::Suspended;
      break;
    case ListenerState::Suspended:
      if (kind == MessageKind::Resume) return ListenerState::Configured;
      if (kind == MessageKind::Reconfigure) return ListenerState::Configured;
      if (kind == MessageKind::Finish) return ListenerState::Dormant;
      break;
  }
  return std::nullopt;
}

ListenerState dispatchMessage(RecordListener& listener, const LoopMessage& message) {
  const auto next = transitionTarget(listener.state_, message.kind());
  if (!next) {
    throw IllegalTransition(listener.state_, message.kind());
  }
  // State is committed before the handler runs, so a handler observing its
  // own state sees the transition already applied.
  listener.state_ = *next;
  switch (message.kind()) {
    case MessageKind::Configure:
      listener.configure(message.configuration());
      break;
    case MessageKind::Reconfigure:
      listener.reconfigure(message.configuration());
      break;
    case MessageKind::Resume:
      listener.resume(message.record());
      break;
    case MessageKind::Suspend:
      listener.suspend(message.record());
      break;
    case MessageKind::Finish:
      listener.finish(message.record());
      break;
    case MessageKind::RecordSupplied:
      listener.recordSupplied(message.supplied());
      break;
  }
  return *next;
}

}  // namespace framestream::loop
