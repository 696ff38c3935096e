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

#include "framestream/ingest/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <string_view>

namespace framestream::ingest {

namespace {

constexpr std::array<std::string_view, 3> kLeafNames = {
    "eventCounter",
    "geometryChangeLogger",
    "hvMonitor",
};

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  return text;
}

bool parseUnsigned(std::string_view field, std::uint64_t& out) {
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc{} && end == field.data() + field.size() && !field.empty();
}

/// Nullopt when the filter spec is well formed, the problem otherwise. The caller
/// turns the problem into an error with its own position information.
std::optional<std::string> filterSpecProblem(const std::string& spec) {
  if (spec == "even-time") return std::nullopt;
  if (spec.starts_with("stream:")) {
    if (spec.size() > 7) return std::nullopt;
    return "filter 'stream:' needs a stream name";
  }
  for (const std::string_view prefix : {std::string_view("min-time:"), std::string_view("max-time:")}) {
    if (spec.starts_with(prefix)) {
      std::uint64_t ticks = 0;
      if (parseUnsigned(std::string_view(spec).substr(prefix.size()), ticks)) return std::nullopt;
      return "filter '" + spec + "' needs an unsigned time";
    }
  }
  return "unknown filter '" + spec + "'";
}

/// Recursive-descent parser for pipeline expressions. Tokens are maximal
/// runs of characters other than '(', ')', ',' and whitespace.
class PipelineParser {
public:
  explicit PipelineParser(const std::string& text) : text_(text) {}

  PipelineNode parse() {
    PipelineNode node = parseNode();
    skipSpace();
    if (pos_ != text_.size()) {
      fail("unexpected trailing text");
    }
    return node;
  }

private:
  [[noreturn]] void fail(const std::string& detail) const {
    throw ConfigError("pipeline, offset " + std::to_string(pos_) + ": " + detail);
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool atEnd() const { return pos_ >= text_.size(); }

  char peek() const { return text_[pos_]; }

  void expect(char c) {
    if (atEnd() || peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  std::string parseToken() {
    skipSpace();
    const std::size_t start = pos_;
    while (!atEnd()) {
      const char c = peek();
      if (c == '(' || c == ')' || c == ',' || std::isspace(static_cast<unsigned char>(c))) break;
      ++pos_;
    }
    if (pos_ == start) {
      fail("expected a name");
    }
    return text_.substr(start, pos_ - start);
  }

  PipelineNode parseNode() {
    const std::string token = parseToken();
    skipSpace();

    const bool call = !atEnd() && peek() == '(';
    if (!call) {
      if (std::find(kLeafNames.begin(), kLeafNames.end(), token) == kLeafNames.end()) {
        fail("unknown analysis '" + token + "'");
      }
      PipelineNode leaf;
      leaf.kind = PipelineNode::Kind::Leaf;
      leaf.leafName = token;
      return leaf;
    }

    expect('(');
    PipelineNode node;
    if (token == "sequence") {
      node.kind = PipelineNode::Kind::Sequence;
    } else if (token == "branch") {
      node.kind = PipelineNode::Kind::Branch;
    } else if (token == "conditional") {
      node.kind = PipelineNode::Kind::Conditional;
    } else {
      fail("unknown combinator '" + token + "'");
    }

    if (node.kind == PipelineNode::Kind::Conditional) {
      node.filterSpec = parseToken();
      if (const auto problem = filterSpecProblem(node.filterSpec)) {
        fail(*problem);
      }
      skipSpace();
      expect(',');
      node.children.push_back(parseNode());
    } else {
      node.children.push_back(parseNode());
      skipSpace();
      while (!atEnd() && peek() == ',') {
        ++pos_;
        node.children.push_back(parseNode());
        skipSpace();
      }
    }
    skipSpace();
    expect(')');
    return node;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

SourceSpec& sourceByName(RunConfig& config, const std::string& name) {
  for (SourceSpec& spec : config.sources) {
    if (spec.streamName == name) return spec;
  }
  SourceSpec& spec = config.sources.emplace_back();
  spec.streamName = name;
  return spec;
}

std::filesystem::path resolveAgainst(const std::filesystem::path& base, const std::filesystem::path& p) {
  return p.is_relative() ? base / p : p;
}

}  // namespace

ConfigError::ConfigError(const std::string& detail) : std::runtime_error("config: " + detail) {}

PipelineNode parsePipeline(const std::string& expression) {
  return PipelineParser(expression).parse();
}

RunConfig parseConfigFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }

  RunConfig config;
  std::optional<std::string> pipelineExpr;
  std::string rawLine;
  std::size_t lineNumber = 0;

  const auto duplicate = [&](const std::string_view key) {
    throw ConfigError("line " + std::to_string(lineNumber) + ": duplicate key '" + std::string(key) + "'");
  };
  const auto badValue = [&](const std::string_view key, const std::string_view value) {
    throw ConfigError("line " + std::to_string(lineNumber) + ": bad value '" + std::string(value) +
                      "' for key '" + std::string(key) + "'");
  };

  while (std::getline(in, rawLine)) {
    ++lineNumber;
    const std::string_view line = trim(rawLine);
    if (line.empty() || line.front() == '#') continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(lineNumber) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(lineNumber) + ": empty key");
    }

    if (key == "pipeline") {
      if (pipelineExpr) duplicate(key);
      pipelineExpr = value;
    } else if (key == "limit") {
      if (config.recordLimit) duplicate(key);
      std::uint64_t limit = 0;
      if (!parseUnsigned(value, limit)) badValue(key, value);
      config.recordLimit = limit;
    } else if (key == "trace") {
      if (config.traceOutput) duplicate(key);
      if (value.empty()) badValue(key, value);
      config.traceOutput = value;
    } else if (key == "summary") {
      if (config.summaryOutput) duplicate(key);
      if (value.empty()) badValue(key, value);
      config.summaryOutput = value;
    } else if (key.starts_with("source.")) {
      const std::string_view rest = std::string_view(key).substr(7);
      const std::size_t dot = rest.rfind('.');
      if (dot == std::string_view::npos || dot == 0) {
        throw ConfigError("line " + std::to_string(lineNumber) + ": expected source.<name>.<field>");
      }
      const std::string name(rest.substr(0, dot));
      const std::string_view field = rest.substr(dot + 1);
      SourceSpec& spec = sourceByName(config, name);
      if (field == "path") {
        if (!spec.path.empty()) duplicate(key);
        if (value.empty()) badValue(key, value);
        spec.path = value;
      } else if (field == "mode") {
        if (value == "sequential") {
          spec.mode = engine::StreamMode::Sequential;
        } else if (value == "lookup") {
          spec.mode = engine::StreamMode::Lookup;
        } else {
          badValue(key, value);
        }
      } else if (field == "interest") {
        if (value == "true") {
          spec.ofInterest = true;
        } else if (value == "false") {
          spec.ofInterest = false;
        } else {
          badValue(key, value);
        }
      } else {
        throw ConfigError("line " + std::to_string(lineNumber) + ": unknown source field '" +
                          std::string(field) + "'");
      }
    } else {
      throw ConfigError("line " + std::to_string(lineNumber) + ": unknown key '" + key + "'");
    }
  }

  if (config.sources.empty()) {
    throw ConfigError("no sources defined");
  }
  for (const SourceSpec& spec : config.sources) {
    if (spec.path.empty()) {
      throw ConfigError("source '" + spec.streamName + "' has no path");
    }
  }
  if (!pipelineExpr) {
    throw ConfigError("missing pipeline");
  }
  config.pipeline = parsePipeline(*pipelineExpr);

  const bool anySequentialOfInterest =
      std::any_of(config.sources.begin(), config.sources.end(), [](const SourceSpec& spec) {
        return spec.mode == engine::StreamMode::Sequential && spec.ofInterest;
      });
  if (!anySequentialOfInterest) {
    throw ConfigError("at least one sequential source of interest is required to drive stops");
  }

  const std::filesystem::path base = path.parent_path();
  for (SourceSpec& spec : config.sources) {
    spec.path = resolveAgainst(base, spec.path);
  }
  if (config.traceOutput) {
    config.traceOutput = resolveAgainst(base, *config.traceOutput);
  }
  if (config.summaryOutput) {
    config.summaryOutput = resolveAgainst(base, *config.summaryOutput);
  }
  return config;
}

}  // namespace framestream::ingest
