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

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "framestream/engine/types.hpp"
#include "framestream/loop/listener.hpp"

namespace framestream::engine {

/// Raised when a frame factory cannot produce a frame.
class FactoryError : public std::runtime_error {
 public:
  explicit FactoryError(const std::string& detail) : std::runtime_error("factory error: " + detail) {}
};

/// A snapshot of every stream at one moment: for each stream, its most recent
/// record at or before the frame's time. A stream with no record by then is
/// simply absent.
///
/// Representation is up to the experiment; this base fixes the driving stop,
/// the time, and the fill/seal protocol. The engine fills a frame once
/// (phase one) and seals it before analyses see it (phase two), so analysis
/// code only ever holds const frames.
class Frame {
 public:
  explicit Frame(Stop drivingStop) : stop_(std::move(drivingStop)) {}
  virtual ~Frame() = default;

  Frame(const Frame&) = delete;
  Frame& operator=(const Frame&) = delete;

  TimeStamp time() const { return stop_.time; }
  const Stop& drivingStop() const { return stop_; }

  /// Adds or replaces the record for one stream. Only legal while unsealed
  /// and for records at or before the frame's time.
  void insert(Record record) {
    if (sealed_) throw std::logic_error("frame is sealed");
    if (record.time > time()) {
      throw std::invalid_argument("record at t=" + std::to_string(record.time.ticks) +
                                  " is later than the frame at t=" + std::to_string(time().ticks));
    }
    doInsert(std::move(record));
  }

  void seal() { sealed_ = true; }
  bool sealed() const { return sealed_; }

  /// Record of the named stream, or nullptr when the stream is absent.
  virtual const Record* find(std::string_view streamName) const = 0;

  /// All contained records ordered lexicographically by stream name.
  virtual std::vector<std::reference_wrapper<const Record>> contents() const = 0;

 protected:
  virtual void doInsert(Record record) = 0;

 private:
  Stop stop_;
  bool sealed_ = false;
};

/// Default map-backed frame.
class BasicFrame final : public Frame {
 public:
  using Frame::Frame;

  const Record* find(std::string_view streamName) const override;
  std::vector<std::reference_wrapper<const Record>> contents() const override;

 protected:
  void doInsert(Record record) override;

 private:
  std::map<std::string, Record, std::less<>> records_;
};

/// Builds the empty frame for a stop; the engine then fills and seals it.
/// Letting the experiment supply the factory is what lets it choose its own
/// frame representation.
class FrameFactory {
 public:
  virtual ~FrameFactory() = default;

  /// Returns a frame with time = stop.time, the given driving stop, and no
  /// contents.
  virtual std::unique_ptr<Frame> createFrame(const Stop& stop) = 0;
};

class BasicFrameFactory final : public FrameFactory {
 public:
  std::unique_ptr<Frame> createFrame(const Stop& stop) override;
};

/// Extracts the frame carried by a record-loop delivery. Throws
/// std::invalid_argument when the handle does not hold a frame.
std::shared_ptr<const Frame> frameOf(const loop::RecordHandle& record);

}  // namespace framestream::engine
