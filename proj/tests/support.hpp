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
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "framestream/engine/stop_source.hpp"
#include "framestream/engine/types.hpp"
#include "framestream/loop/listener.hpp"
#include "framestream/loop/record_loop.hpp"
#include "oracle.hpp"

namespace framestream::testing {

/// Appends one letter per observed message (see isLegalLifecycleTrace) and
/// keeps the supplied records for inspection.
class TraceListener : public loop::RecordListener {
 public:
  const std::string& trace() const { return trace_; }
  const std::vector<loop::RecordHandle>& records() const { return records_; }
  const std::vector<std::uint64_t>& sequenceNumbers() const { return sequenceNumbers_; }
  const std::vector<std::uint64_t>& suppliedAtSuspend() const { return suppliedAtSuspend_; }
  const std::vector<std::map<std::string, std::string>>& configurations() const { return configurations_; }

 protected:
  void configure(const loop::ConfigurationEvent& event) override {
    trace_ += 'c';
    configurations_.push_back(event.parameters());
  }
  void reconfigure(const loop::ConfigurationEvent& event) override {
    trace_ += 'n';
    configurations_.push_back(event.parameters());
  }
  void resume(const loop::RecordEvent&) override { trace_ += 'u'; }
  void suspend(const loop::RecordEvent& event) override {
    trace_ += 's';
    suppliedAtSuspend_.push_back(event.recordsSuppliedSoFar());
  }
  void finish(const loop::RecordEvent&) override { trace_ += 'f'; }
  void recordSupplied(const loop::RecordSuppliedEvent& event) override {
    trace_ += 'r';
    records_.push_back(event.record());
    sequenceNumbers_.push_back(event.sequenceNumber());
  }

 private:
  std::string trace_;
  std::vector<loop::RecordHandle> records_;
  std::vector<std::uint64_t> sequenceNumbers_;
  std::vector<std::uint64_t> suppliedAtSuspend_;
  std::vector<std::map<std::string, std::string>> configurations_;
};

/// A well-formed message of the given kind with placeholder payload, for
/// driving listeners directly in lifecycle tests.
inline loop::LoopMessage messageFor(loop::MessageKind kind) {
  using K = loop::MessageKind;
  switch (kind) {
    case K::Configure: return loop::LoopMessage::configure(loop::ConfigurationEvent{});
    case K::Reconfigure: return loop::LoopMessage::reconfigure(loop::ConfigurationEvent{});
    case K::Resume: return loop::LoopMessage::resume(loop::RecordEvent(0, 0));
    case K::Suspend: return loop::LoopMessage::suspend(loop::RecordEvent(0, 0));
    case K::Finish: return loop::LoopMessage::finish(loop::RecordEvent(0, 0));
    case K::RecordSupplied: break;
  }
  return loop::LoopMessage::recordSupplied(loop::RecordSuppliedEvent(loop::RecordHandle(0), 1));
}

/// Walks a listener from wherever it is back to Dormant along legal edges,
/// so tests can destroy it cleanly.
inline void drainToDormant(loop::RecordListener& listener) {
  using S = loop::ListenerState;
  if (listener.state() == S::Configured || listener.state() == S::Processing) {
    loop::dispatchMessage(listener, messageFor(loop::MessageKind::Suspend));
  }
  if (listener.state() == S::Suspended) {
    loop::dispatchMessage(listener, messageFor(loop::MessageKind::Finish));
  }
}

/// Drives a fresh listener from Dormant into the requested state along legal
/// edges.
inline void driveTo(loop::RecordListener& listener, loop::ListenerState target) {
  using S = loop::ListenerState;
  if (target == S::Dormant) return;
  loop::dispatchMessage(listener, messageFor(loop::MessageKind::Configure));
  if (target == S::Configured) return;
  if (target == S::Processing) {
    loop::dispatchMessage(listener, messageFor(loop::MessageKind::RecordSupplied));
    return;
  }
  loop::dispatchMessage(listener, messageFor(loop::MessageKind::Suspend));
}

/// In-memory source over `count` integer records 0..count-1.
inline std::shared_ptr<loop::VectorRecordSource> intSource(int count) {
  std::vector<loop::RecordHandle> records;
  records.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) records.emplace_back(i);
  return std::make_shared<loop::VectorRecordSource>(std::move(records));
}

/// Supplies `good` records, then fails every subsequent pull.
class FailingSource final : public loop::RecordSource {
 public:
  explicit FailingSource(int good) : good_(good) {}

  std::optional<loop::RecordHandle> next() override {
    if (supplied_ < good_) return loop::RecordHandle(supplied_++);
    throw loop::SourceError("backing store unavailable");
  }

 private:
  int good_;
  int supplied_ = 0;
};

/// Throws from recordSupplied once a given delivery count is reached.
/// Throws LoopAbort when `abort` is true, std::runtime_error otherwise.
class ThrowAfterListener : public loop::RecordListener {
 public:
  ThrowAfterListener(std::uint64_t afterRecords, bool abort)
      : afterRecords_(afterRecords), abort_(abort) {}

  std::uint64_t seen() const { return seen_; }

 protected:
  void recordSupplied(const loop::RecordSuppliedEvent&) override {
    ++seen_;
    if (seen_ >= afterRecords_) {
      if (abort_) throw loop::LoopAbort();
      throw std::runtime_error("listener failure for testing");
    }
  }

 private:
  std::uint64_t afterRecords_;
  bool abort_;
  std::uint64_t seen_ = 0;
};

/// Registers the oracle fixture's streams as in-memory stop sources, in
/// registration-index order.
inline std::vector<std::shared_ptr<engine::StopSource>> memorySources(
    const std::vector<OracleStream>& streams) {
  std::vector<std::shared_ptr<engine::StopSource>> sources;
  sources.reserve(streams.size());
  for (const OracleStream& stream : streams) {
    sources.push_back(engine::makeMemoryStopSource(stream.descriptor, stream.records));
  }
  return sources;
}

/// Scratch directory (under the ctest working directory) that is wiped on
/// construction so reruns start clean.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / ("framestream_test_" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path file(const std::string& name, const std::string& contents) const {
    const std::filesystem::path p = path_ / name;
    std::ofstream out(p, std::ios::binary);
    out << contents;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace framestream::testing
