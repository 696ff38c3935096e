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

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "framestream/engine/types.hpp"
#include "framestream/loop/source.hpp"

namespace framestream::ingest {

/// A record file failed to open or a line failed to parse. lineNumber() is
/// 1-based; 0 means the failure was not tied to a line (e.g. open failed).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t lineNumber, const std::string& detail);

  std::size_t lineNumber() const { return lineNumber_; }

private:
  std::size_t lineNumber_;
};

/// A record's time went backwards where non-decreasing order was required.
class OrderError : public ParseError {
public:
  explicit OrderError(std::size_t lineNumber);
};

enum class TimeOrder {
  NonDecreasing,
  Any,
};

struct ParseOptions {
  TimeOrder order = TimeOrder::NonDecreasing;
  /// When set, every record's stream field must equal this name.
  std::optional<std::string> expectedStream;
};

/// Reads a whole record file. Format, one record per line:
///
///   <stream> TAB <time> TAB <payload> NEWLINE
///
/// The payload may be empty and may itself contain tabs; only the first two
/// tabs delimit fields. The time is an unsigned decimal integer. Blank lines
/// and lines starting with '#' are skipped and do not count as records. A
/// single trailing carriage return is tolerated and stripped.
///
/// Throws ParseError on open failure or malformed lines, OrderError when
/// options.order is NonDecreasing and a time decreases.
std::vector<engine::Record> parseRecordFile(const std::filesystem::path& path,
                                            const ParseOptions& options = {});

/// Inverse of the line parser, without the trailing newline. Round-trips any
/// record whose stream name is tab-free and non-empty.
std::string formatRecordLine(const engine::Record& record);

/// Streams a record file through the generic loop protocol one line at a
/// time, without loading it whole. Each supplied record handle holds an
/// engine::Record. Parse and order failures surface from next() with the
/// same exceptions as parseRecordFile.
class RecordFileSource final : public loop::RecordSource {
public:
  RecordFileSource(std::filesystem::path path, ParseOptions options = {});

  std::optional<loop::RecordHandle> next() override;

  std::size_t recordsRead() const { return recordsRead_; }

private:
  std::filesystem::path path_;
  ParseOptions options_;
  std::ifstream in_;
  std::size_t lineNumber_ = 0;
  std::size_t recordsRead_ = 0;
  std::optional<engine::TimeStamp> lastTime_;
};

}  // namespace framestream::ingest
