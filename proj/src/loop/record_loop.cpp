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

#include "framestream/loop/record_loop.hpp"

#include <atomic>
#include <stdexcept>
#include <utility>

namespace framestream::loop {

namespace {

std::uint64_t nextLoopId() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

}  // namespace

const char* toString(EndReason reason) {
  switch (reason) {
    case EndReason::SourceExhausted: return "source-exhausted";
    case EndReason::LimitReached: return "limit-reached";
    case EndReason::Aborted: return "aborted";
  }
  return "unknown";
}

RecordLoop::RecordLoop(std::shared_ptr<RecordSource> source, std::shared_ptr<RecordListener> listener)
    : source_(std::move(source)), listener_(std::move(listener)), loopId_(nextLoopId()) {
  if (!source_ || !listener_) {
    throw std::invalid_argument("record loop requires a source and a listener");
  }
}

LoopReport RecordLoop::run(const ConfigurationEvent& config, std::optional<std::uint64_t> limit) {
  source_->loopConfigured(config);
  return pump(LoopMessage::configure(config), limit);
}

LoopReport RecordLoop::resume(std::optional<std::uint64_t> limit) {
  source_->loopResumed();
  return pump(LoopMessage::resume(makeRecordEvent()), limit);
}

LoopReport RecordLoop::reconfigure(const ConfigurationEvent& config, std::optional<std::uint64_t> limit) {
  source_->loopReconfigured(config);
  return pump(LoopMessage::reconfigure(config), limit);
}

void RecordLoop::finish() {
  dispatchMessage(*listener_, LoopMessage::finish(makeRecordEvent()));
  source_->loopFinished();
}

LoopReport RecordLoop::pump(const LoopMessage& opening, std::optional<std::uint64_t> limit) {
  // An illegal opening (e.g. resume on a dormant listener) propagates before
  // any record moves; the listener is untouched per the dispatch contract.
  dispatchMessage(*listener_, opening);

  LoopReport report;
  report.listenersInvoked = listener_->listenerCount();
  const std::uint64_t vetoesBefore = listener_->vetoCount();

  auto sendSuspend = [this] {
    dispatchMessage(*listener_, LoopMessage::suspend(makeRecordEvent()));
    source_->loopSuspended();
  };

  std::uint64_t sequence = 0;  // restarts every phase
  try {
    for (;;) {
      if (limit && report.recordsSupplied >= *limit) {
        report.endReason = EndReason::LimitReached;
        break;
      }
      auto record = source_->next();
      if (!record) {
        report.endReason = EndReason::SourceExhausted;
        break;
      }
      ++report.recordsSupplied;
      ++recordsSupplied_;
      dispatchMessage(*listener_, LoopMessage::recordSupplied(RecordSuppliedEvent(std::move(*record), ++sequence)));
    }
  } catch (const LoopAbort&) {
    report.endReason = EndReason::Aborted;
  } catch (...) {
    try {
      sendSuspend();
    } catch (...) {
      // Keep the original error; a suspend failure here has nowhere to go.
    }
    throw;
  }

  sendSuspend();
  report.vetoCount = listener_->vetoCount() - vetoesBefore;
  return report;
}

}  // namespace framestream::loop
