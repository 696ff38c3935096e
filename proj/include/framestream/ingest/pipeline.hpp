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
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "framestream/engine/types.hpp"
#include "framestream/experiment/analyses.hpp"
#include "framestream/ingest/config.hpp"
#include "framestream/loop/composite.hpp"
#include "framestream/loop/record_loop.hpp"

namespace framestream::ingest {

/// One stop as the run delivered it, with the frame contents that went with
/// it. frameContents is ordered lexicographically by stream name.
struct StopTraceEntry {
  std::uint64_t ordinal = 0;  // 1-based position in the run
  engine::StopKind kind = engine::StopKind::Active;
  std::string streamName;
  engine::TimeStamp time;
  std::vector<std::pair<std::string, engine::TimeStamp>> frameContents;
};

/// Tab-separated line for one trace entry, without the newline:
///
///   <ordinal> TAB A|P TAB <stream> TAB <time> TAB <name:recTime,...>
std::string formatTraceLine(const StopTraceEntry& entry);

/// Listener that records the stop and frame-contents sequence of a run. Hang
/// it in front of the analyses (sequence(recorder, ...)) to trace exactly
/// what they saw.
class StopTraceRecorder final : public loop::RecordListener {
 public:
  const std::vector<StopTraceEntry>& entries() const { return entries_; }

 protected:
  void recordSupplied(const loop::RecordSuppliedEvent& event) override;

 private:
  std::vector<StopTraceEntry> entries_;
};

/// Listener tree built from a pipeline expression, plus the analysis leaves
/// in expression order (left to right) for later summary collection.
struct BuiltPipeline {
  std::shared_ptr<loop::RecordListener> listener;
  std::vector<std::shared_ptr<experiment::SampleAnalysis>> leaves;
};

/// Instantiates the listener tree for a parsed pipeline. Every leaf gets a
/// fresh analysis instance, so the same analysis name may appear repeatedly.
BuiltPipeline buildPipeline(const PipelineNode& node);

/// Frame filter for a conditional(...) spec; see parsePipeline for the specs.
std::shared_ptr<loop::FilterListener> makeFrameFilter(const std::string& spec);

/// Everything a finished run produced, collected in memory.
struct PipelineResult {
  loop::LoopReport report;
  std::vector<StopTraceEntry> trace;
  /// Analysis summaries in pipeline leaf order, keyed by analysis name.
  std::vector<std::pair<std::string, experiment::AnalysisSummary>> summaries;
};

/// Runs the config end to end: loads every source, assembles the engine and
/// the listener tree, drives one record loop over all stops (configure ..
/// finish), and collects the results. Writes no files.
PipelineResult executePipeline(const RunConfig& config);

/// Serializes a full trace (one line per entry) and a summary report (one
/// block per analysis, blocks separated by blank lines). Both end with a
/// trailing newline when non-empty.
void writeTrace(std::ostream& out, const std::vector<StopTraceEntry>& trace);
void writeSummaries(std::ostream& out,
                    const std::vector<std::pair<std::string, experiment::AnalysisSummary>>& summaries);

/// executePipeline plus the file outputs requested by the config. Outputs
/// are written only after the run has fully succeeded, so a failed run
/// leaves no partial files. Returns a process exit code; failures are
/// reported as one line on `diagnostics`.
int runPipeline(const RunConfig& config, std::ostream& diagnostics);

/// Command line entry point (subcommands: run, trace, validate). Returns the
/// process exit code: 0 success, 1 runtime failure, 2 usage error.
int cli(int argc, const char* const* argv);

}  // namespace framestream::ingest
