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
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "framestream/experiment/listener.hpp"

namespace framestream::experiment {

/// What a sample analysis has seen since it was last (re)configured.
struct AnalysisSummary {
  /// Frame count per driving stream name.
  std::map<std::string, std::uint64_t> framesByStream;
  /// Times of the first and last frames observed; empty when no frames were.
  std::optional<engine::TimeStamp> firstTime;
  std::optional<engine::TimeStamp> lastTime;
  /// Analysis-specific results, serialized verbatim.
  std::map<std::string, std::string> custom;

  std::uint64_t totalFrames() const;
};

/// Serializes one summary block: a "listener=<name>" line followed by
/// lexicographically sorted key=value lines. Stream counts appear as
/// frames.<stream>, the total as frames.total, and the observed time span as
/// time.first / time.last. Custom entries are emitted verbatim. The block
/// ends without a trailing blank line; callers separate blocks themselves.
void writeSummary(std::ostream& out, const std::string& listenerName, const AnalysisSummary& summary);

/// Base class for the bundled analyses: keeps the shared frame bookkeeping
/// and resets it whenever the loop is configured or reconfigured, so each
/// processing phase that starts from a configuration message is summarized
/// on its own.
class SampleAnalysis : public ExperimentListener {
public:
  explicit SampleAnalysis(std::string name);

  const std::string& name() const { return name_; }
  const AnalysisSummary& summary() const { return summary_; }

  void geometry(const engine::Frame& frame) override;
  void highVoltage(const engine::Frame& frame) override;
  void event(const engine::Frame& frame) override;
  void otherStream(const engine::Frame& frame) override;

  void configure(const loop::ConfigurationEvent& event) override;
  void reconfigure(const loop::ConfigurationEvent& event) override;

protected:
  /// Stream-specific hook, called once per frame after the shared counters
  /// are updated. The default does nothing.
  virtual void observe(const engine::Frame&) {}

  /// Reset hook for analysis-specific state; summary() is already cleared.
  virtual void reset() {}

  AnalysisSummary& mutableSummary() { return summary_; }

private:
  void record(const engine::Frame& frame);

  std::string name_;
  AnalysisSummary summary_;
};

/// Counts event frames; everything else only feeds the shared counters.
class EventCounter final : public SampleAnalysis {
public:
  EventCounter();

  std::uint64_t eventsSeen() const { return events_; }

protected:
  void observe(const engine::Frame& frame) override;
  void reset() override;

private:
  std::uint64_t events_ = 0;
};

/// Remembers every distinct geometry payload in arrival order. A geometry
/// frame whose payload equals the previous one is not a change.
class GeometryChangeLogger final : public SampleAnalysis {
public:
  GeometryChangeLogger();

  const std::vector<std::pair<engine::TimeStamp, std::string>>& changes() const { return changes_; }

protected:
  void observe(const engine::Frame& frame) override;
  void reset() override;

private:
  std::vector<std::pair<engine::TimeStamp, std::string>> changes_;
};

/// Checks each event frame for high-voltage context: how many events had an
/// hv record in their frame, and the last hv payload seen on one.
class HvMonitor final : public SampleAnalysis {
public:
  HvMonitor();

  std::uint64_t eventsWithHv() const { return withHv_; }
  std::uint64_t eventsWithoutHv() const { return withoutHv_; }

protected:
  void observe(const engine::Frame& frame) override;
  void reset() override;

private:
  std::uint64_t withHv_ = 0;
  std::uint64_t withoutHv_ = 0;
};

/// The bundled analyses, ready to hang under one record loop.
struct SampleAnalysisBundle {
  std::shared_ptr<EventCounter> eventCounter;
  std::shared_ptr<GeometryChangeLogger> geometryChangeLogger;
  std::shared_ptr<HvMonitor> hvMonitor;
};

SampleAnalysisBundle sampleAnalyses();

/// Frame specialized to the experiment's three streams: known streams live
/// in fixed slots, anything else in an overflow map. Behaves exactly like
/// BasicFrame through the Frame interface; exists to exercise factory
/// pluggability with a structurally different implementation.
class SlotFrame final : public engine::Frame {
public:
  explicit SlotFrame(const engine::Stop& drivingStop);

  const engine::Record* find(std::string_view streamName) const override;
  std::vector<std::reference_wrapper<const engine::Record>> contents() const override;

protected:
  void doInsert(engine::Record record) override;

private:
  std::optional<engine::Record> slots_[3];
  std::map<std::string, engine::Record, std::less<>> overflow_;
};

class ExperimentFrameFactory final : public engine::FrameFactory {
public:
  std::unique_ptr<engine::Frame> createFrame(const engine::Stop& drivingStop) override;
};

}  // namespace framestream::experiment
