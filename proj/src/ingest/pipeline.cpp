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

#include "framestream/ingest/pipeline.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "framestream/engine/frame.hpp"
#include "framestream/engine/stop_engine.hpp"
#include "framestream/ingest/file_source.hpp"
#include "framestream/ingest/record_file.hpp"

namespace framestream::ingest {

namespace {

std::uint64_t parseTicksAfter(const std::string& spec, std::size_t prefixLength) {
  const std::string_view field = std::string_view(spec).substr(prefixLength);
  std::uint64_t ticks = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), ticks);
  if (ec != std::errc{} || end != field.data() + field.size() || field.empty()) {
    throw ConfigError("filter '" + spec + "' needs an unsigned time");
  }
  return ticks;
}

std::shared_ptr<experiment::SampleAnalysis> makeLeaf(const std::string& name) {
  if (name == "eventCounter") return std::make_shared<experiment::EventCounter>();
  if (name == "geometryChangeLogger") return std::make_shared<experiment::GeometryChangeLogger>();
  if (name == "hvMonitor") return std::make_shared<experiment::HvMonitor>();
  throw ConfigError("unknown analysis '" + name + "'");
}

std::shared_ptr<loop::RecordListener> build(const PipelineNode& node,
                                            std::vector<std::shared_ptr<experiment::SampleAnalysis>>& leaves) {
  switch (node.kind) {
    case PipelineNode::Kind::Leaf: {
      std::shared_ptr<experiment::SampleAnalysis> analysis = makeLeaf(node.leafName);
      leaves.push_back(analysis);
      return experiment::adaptListener(std::move(analysis));
    }
    case PipelineNode::Kind::Sequence:
    case PipelineNode::Kind::Branch: {
      std::vector<std::shared_ptr<loop::RecordListener>> children;
      children.reserve(node.children.size());
      for (const PipelineNode& child : node.children) {
        children.push_back(build(child, leaves));
      }
      return node.kind == PipelineNode::Kind::Sequence ? loop::sequence(std::move(children))
                                                       : loop::branch(std::move(children));
    }
    case PipelineNode::Kind::Conditional: {
      if (node.children.size() != 1) {
        throw ConfigError("conditional needs exactly one downstream node");
      }
      return loop::conditional(makeFrameFilter(node.filterSpec), build(node.children.front(), leaves));
    }
  }
  throw ConfigError("corrupt pipeline node");
}

/// Writes via `body`, removing the file again if writing fails partway.
void writeWholeFile(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write " + path.string());
    }
    body(out);
    out.flush();
    if (out) return;
  }
  std::error_code ec;
  std::filesystem::remove(path, ec);
  throw std::runtime_error("failed while writing " + path.string());
}

}  // namespace

std::string formatTraceLine(const StopTraceEntry& entry) {
  std::string line = std::to_string(entry.ordinal);
  line += '\t';
  line += entry.kind == engine::StopKind::Active ? 'A' : 'P';
  line += '\t';
  line += entry.streamName;
  line += '\t';
  line += std::to_string(entry.time.ticks);
  line += '\t';
  bool first = true;
  for (const auto& [name, time] : entry.frameContents) {
    if (!first) line += ',';
    first = false;
    line += name;
    line += ':';
    line += std::to_string(time.ticks);
  }
  return line;
}

void StopTraceRecorder::recordSupplied(const loop::RecordSuppliedEvent& event) {
  const std::shared_ptr<const engine::Frame> frame = engine::frameOf(event.record());
  StopTraceEntry entry;
  entry.ordinal = entries_.size() + 1;
  entry.kind = frame->drivingStop().kind;
  entry.streamName = frame->drivingStop().stream.name;
  entry.time = frame->time();
  for (const engine::Record& record : frame->contents()) {
    entry.frameContents.emplace_back(record.stream.name, record.time);
  }
  entries_.push_back(std::move(entry));
}

BuiltPipeline buildPipeline(const PipelineNode& node) {
  BuiltPipeline built;
  built.listener = build(node, built.leaves);
  return built;
}

std::shared_ptr<loop::FilterListener> makeFrameFilter(const std::string& spec) {
  std::function<bool(const engine::Frame&)> accept;
  if (spec == "even-time") {
    accept = [](const engine::Frame& frame) { return frame.time().ticks % 2 == 0; };
  } else if (spec.starts_with("stream:")) {
    std::string name = spec.substr(7);
    if (name.empty()) {
      throw ConfigError("filter 'stream:' needs a stream name");
    }
    accept = [name = std::move(name)](const engine::Frame& frame) {
      return frame.drivingStop().stream.name == name;
    };
  } else if (spec.starts_with("min-time:")) {
    const std::uint64_t ticks = parseTicksAfter(spec, 9);
    accept = [ticks](const engine::Frame& frame) { return frame.time().ticks >= ticks; };
  } else if (spec.starts_with("max-time:")) {
    const std::uint64_t ticks = parseTicksAfter(spec, 9);
    accept = [ticks](const engine::Frame& frame) { return frame.time().ticks <= ticks; };
  } else {
    throw ConfigError("unknown filter '" + spec + "'");
  }
  return std::make_shared<loop::PredicateFilter>(
      [accept = std::move(accept)](const loop::RecordSuppliedEvent& event) {
        return accept(*engine::frameOf(event.record()));
      });
}

PipelineResult executePipeline(const RunConfig& config) {
  auto stopEngine = std::make_shared<engine::StopEngine>();
  for (const SourceSpec& spec : config.sources) {
    const engine::StreamDescriptor descriptor{{spec.streamName, 0}, spec.mode, spec.ofInterest};
    stopEngine->registerStopSource(fileStopSource(spec.path, descriptor));
  }

  BuiltPipeline built = buildPipeline(config.pipeline);
  auto tracer = std::make_shared<StopTraceRecorder>();
  const auto root = loop::sequence({tracer, built.listener});

  loop::RecordLoop loop(
      engine::frameSource(std::move(stopEngine), std::make_shared<engine::BasicFrameFactory>()), root);

  PipelineResult result;
  result.report = loop.run(loop::ConfigurationEvent{}, config.recordLimit);
  loop.finish();

  result.trace = tracer->entries();
  result.summaries.reserve(built.leaves.size());
  for (const auto& leaf : built.leaves) {
    result.summaries.emplace_back(leaf->name(), leaf->summary());
  }
  return result;
}

void writeTrace(std::ostream& out, const std::vector<StopTraceEntry>& trace) {
  for (const StopTraceEntry& entry : trace) {
    out << formatTraceLine(entry) << '\n';
  }
}

void writeSummaries(std::ostream& out,
                    const std::vector<std::pair<std::string, experiment::AnalysisSummary>>& summaries) {
  bool first = true;
  for (const auto& [name, summary] : summaries) {
    if (!first) out << '\n';
    first = false;
    experiment::writeSummary(out, name, summary);
  }
}

int runPipeline(const RunConfig& config, std::ostream& diagnostics) {
  try {
    const PipelineResult result = executePipeline(config);
    if (config.traceOutput) {
      writeWholeFile(*config.traceOutput, [&](std::ostream& out) { writeTrace(out, result.trace); });
    }
    if (config.summaryOutput) {
      writeWholeFile(*config.summaryOutput,
                     [&](std::ostream& out) { writeSummaries(out, result.summaries); });
    }
    std::cout << "frames=" << result.report.recordsSupplied << " vetoed=" << result.report.vetoCount
              << " listeners=" << result.report.listenersInvoked << " end="
              << loop::toString(result.report.endReason) << '\n';
    return 0;
  } catch (const std::exception& error) {
    diagnostics << "error: " << error.what() << '\n';
    return 1;
  }
}

int cli(int argc, const char* const* argv) {
  CLI::App app{"frame/stream/stop analysis runner"};
  app.require_subcommand(1);

  std::string configPath;
  std::optional<std::uint64_t> limit;

  CLI::App* run = app.add_subcommand("run", "Execute a config and write its configured outputs");
  run->add_option("--config", configPath, "Run config file")->required();
  run->add_option("--limit", limit, "Deliver at most this many frames");

  CLI::App* trace = app.add_subcommand("trace", "Execute a config and print the stop trace to stdout");
  trace->add_option("--config", configPath, "Run config file")->required();
  trace->add_option("--limit", limit, "Deliver at most this many frames");

  CLI::App* validate = app.add_subcommand("validate", "Check a config and its record files without running");
  validate->add_option("--config", configPath, "Run config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config = parseConfigFile(configPath);
    if (limit) {
      config.recordLimit = limit;
    }

    if (app.got_subcommand(run)) {
      return runPipeline(config, std::cerr);
    }
    if (app.got_subcommand(trace)) {
      const PipelineResult result = executePipeline(config);
      writeTrace(std::cout, result.trace);
      return 0;
    }

    // validate: parse every record file with the same strictness a run would
    // apply, and instantiate the pipeline, but execute nothing.
    for (const SourceSpec& spec : config.sources) {
      ParseOptions options;
      options.order = spec.mode == engine::StreamMode::Sequential ? TimeOrder::NonDecreasing
                                                                  : TimeOrder::Any;
      options.expectedStream = spec.streamName;
      (void)parseRecordFile(spec.path, options);
    }
    (void)buildPipeline(config.pipeline);
    return 0;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
}

}  // namespace framestream::ingest
