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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "framestream/engine/types.hpp"

namespace framestream::ingest {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& detail);
};

/// One stream in a run: where its records live and how it is scheduled.
struct SourceSpec {
  std::filesystem::path path;
  std::string streamName;
  engine::StreamMode mode = engine::StreamMode::Sequential;
  bool ofInterest = true;
};

/// Parsed pipeline expression. Sequence and Branch hold one or more
/// children; Conditional holds a filter spec and exactly one child; Leaf
/// names one of the bundled analyses.
struct PipelineNode {
  enum class Kind { Sequence, Branch, Conditional, Leaf };

  Kind kind = Kind::Leaf;
  std::string leafName;                 // Leaf only
  std::string filterSpec;               // Conditional only
  std::vector<PipelineNode> children;   // Sequence, Branch, Conditional
};

/// Parses a pipeline expression such as
///
///   sequence(eventCounter, conditional(stream:event, hvMonitor))
///
/// Grammar: a node is either a leaf name (eventCounter,
/// geometryChangeLogger, hvMonitor) or one of sequence(...) / branch(...)
/// with one or more comma-separated child nodes, or
/// conditional(<filter>, <node>). Filters: stream:<name>, even-time,
/// min-time:<t>, max-time:<t>. Whitespace between tokens is ignored.
PipelineNode parsePipeline(const std::string& expression);

/// A full run description, usually read from a config file.
struct RunConfig {
  /// Stream registration order follows this vector.
  std::vector<SourceSpec> sources;
  PipelineNode pipeline;
  std::optional<std::uint64_t> recordLimit;
  std::optional<std::filesystem::path> traceOutput;
  std::optional<std::filesystem::path> summaryOutput;
};

/// Reads a run config. Line-oriented key=value format; blank lines and '#'
/// comments are skipped. Keys:
///
///   source.<name>.path = records/<name>.rec   (required per source)
///   source.<name>.mode = sequential | lookup  (default sequential)
///   source.<name>.interest = true | false     (default true)
///   pipeline = <expression>                   (required)
///   limit = <n>
///   trace = <path>
///   summary = <path>
///
/// Sources register in order of first appearance of their name. Relative
/// paths are resolved against the config file's directory. At least one
/// source must be sequential and of interest, otherwise the run could never
/// produce a stop.
RunConfig parseConfigFile(const std::filesystem::path& path);

}  // namespace framestream::ingest
