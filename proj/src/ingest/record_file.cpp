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

#include "framestream/ingest/record_file.hpp"

#include <charconv>
#include <string_view>
#include <utility>

namespace framestream::ingest {

namespace {

/// Parses one non-skipped line into a record, or throws. Shared between the
/// whole-file parser and the streaming source so the two cannot drift.
engine::Record parseLine(std::string_view line, std::size_t lineNumber, const ParseOptions& options,
                         std::optional<engine::TimeStamp>& lastTime) {
  const std::size_t firstTab = line.find('\t');
  if (firstTab == std::string_view::npos) {
    throw ParseError(lineNumber, "expected <stream>\\t<time>\\t<payload>");
  }
  const std::size_t secondTab = line.find('\t', firstTab + 1);
  if (secondTab == std::string_view::npos) {
    throw ParseError(lineNumber, "expected <stream>\\t<time>\\t<payload>");
  }

  const std::string_view stream = line.substr(0, firstTab);
  const std::string_view timeField = line.substr(firstTab + 1, secondTab - firstTab - 1);
  const std::string_view payload = line.substr(secondTab + 1);

  if (stream.empty()) {
    throw ParseError(lineNumber, "empty stream name");
  }
  if (options.expectedStream && stream != *options.expectedStream) {
    throw ParseError(lineNumber, "record belongs to stream '" + std::string(stream) +
                                     "', expected '" + *options.expectedStream + "'");
  }

  std::uint64_t ticks = 0;
  const auto [end, ec] = std::from_chars(timeField.data(), timeField.data() + timeField.size(), ticks);
  if (ec != std::errc{} || end != timeField.data() + timeField.size() || timeField.empty()) {
    throw ParseError(lineNumber, "bad time '" + std::string(timeField) + "'");
  }

  const engine::TimeStamp time{ticks};
  if (options.order == TimeOrder::NonDecreasing && lastTime && time < *lastTime) {
    throw OrderError(lineNumber);
  }
  lastTime = time;

  return engine::Record{{std::string(stream), 0}, time, std::string(payload)};
}

/// True for lines the format ignores: blank or starting with '#'.
bool skippable(std::string_view line) {
  return line.empty() || line.front() == '#';
}

void stripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
}

}  // namespace

ParseError::ParseError(std::size_t lineNumber, const std::string& detail)
    : std::runtime_error(lineNumber == 0 ? detail : "line " + std::to_string(lineNumber) + ": " + detail),
      lineNumber_(lineNumber) {}

OrderError::OrderError(std::size_t lineNumber)
    : ParseError(lineNumber, "record time decreases; the file must be non-decreasing in time") {}

std::vector<engine::Record> parseRecordFile(const std::filesystem::path& path,
                                            const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(0, "cannot open record file: " + path.string());
  }

  std::vector<engine::Record> records;
  std::optional<engine::TimeStamp> lastTime;
  std::string line;
  std::size_t lineNumber = 0;
  while (std::getline(in, line)) {
    ++lineNumber;
    stripCarriageReturn(line);
    if (skippable(line)) continue;
    records.push_back(parseLine(line, lineNumber, options, lastTime));
  }
  return records;
}

std::string formatRecordLine(const engine::Record& record) {
  std::string line = record.stream.name;
  line += '\t';
  line += std::to_string(record.time.ticks);
  line += '\t';
  line += record.payload;
  return line;
}

RecordFileSource::RecordFileSource(std::filesystem::path path, ParseOptions options)
    : path_(std::move(path)), options_(std::move(options)), in_(path_) {
  if (!in_) {
    throw ParseError(0, "cannot open record file: " + path_.string());
  }
}

std::optional<loop::RecordHandle> RecordFileSource::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++lineNumber_;
    stripCarriageReturn(line);
    if (skippable(line)) continue;
    engine::Record record = parseLine(line, lineNumber_, options_, lastTime_);
    ++recordsRead_;
    return loop::RecordHandle(std::move(record));
  }
  return std::nullopt;
}

}  // namespace framestream::ingest
