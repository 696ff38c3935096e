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
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "framestream/loop/listener.hpp"

namespace framestream::loop {

/// Raised when a source cannot read its underlying data.
class SourceError : public std::runtime_error {
 public:
  explicit SourceError(const std::string& detail) : std::runtime_error("source error: " + detail) {}
};

/// Supplies records to a loop in source order. After the first end-of-source
/// (nullopt) every subsequent call returns end-of-source as well.
///
/// The lifecycle hooks mirror the messages the owning loop sends to its
/// listener, so a source can bracket expensive handles (files, connections)
/// around processing phases. Defaults are no-ops.
class RecordSource {
 public:
  virtual ~RecordSource() = default;

  virtual std::optional<RecordHandle> next() = 0;

  virtual void loopConfigured(const ConfigurationEvent&) {}
  virtual void loopReconfigured(const ConfigurationEvent&) {}
  virtual void loopResumed() {}
  virtual void loopSuspended() {}
  virtual void loopFinished() {}
};

/// Sequential source plus a minimal random-access query, for interactive
/// drivers that fetch a record by position instead of pulling in order.
class InteractiveRecordSource : public RecordSource {
 public:
  /// Returns the record at `index` in source order, or nullopt past the end.
  /// Does not disturb the sequential cursor.
  virtual std::optional<RecordHandle> recordAt(std::size_t index) const = 0;
};

/// In-memory source over a fixed list of records.
class VectorRecordSource final : public InteractiveRecordSource {
 public:
  explicit VectorRecordSource(std::vector<RecordHandle> records) : records_(std::move(records)) {}

  std::optional<RecordHandle> next() override {
    if (cursor_ >= records_.size()) return std::nullopt;
    return records_[cursor_++];
  }

  std::optional<RecordHandle> recordAt(std::size_t index) const override {
    if (index >= records_.size()) return std::nullopt;
    return records_[index];
  }

 private:
  std::vector<RecordHandle> records_;
  std::size_t cursor_ = 0;
};

}  // namespace framestream::loop
