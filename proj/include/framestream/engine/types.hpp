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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace framestream::engine {

/// Abstract time. The engine only ever compares timestamps; it attaches no
/// calendar meaning to the tick count.
struct TimeStamp {
  std::uint64_t ticks = 0;

  friend auto operator<=>(const TimeStamp&, const TimeStamp&) = default;
};

/// How a stream's records are supplied.
///
/// Sequential streams are read in non-decreasing time order and drive the run
/// forward; lookup streams are consulted on demand, database-style, to fill
/// in whatever a frame needs.
enum class StreamMode : std::uint8_t {
  Sequential,
  Lookup,
};

enum class StopKind : std::uint8_t {
  Active,
  Passive,
};

const char* toString(StreamMode mode);
const char* toString(StopKind kind);

/// Identity of one stream within an engine. Names are unique;
/// registrationIndex is assigned densely from 0 in registration order and
/// breaks scheduling ties.
struct StreamId {
  std::string name;
  std::size_t registrationIndex = 0;

  friend bool operator==(const StreamId& a, const StreamId& b) { return a.name == b.name; }
};

/// Registration-time description of one stream. Only streams of interest
/// generate stops; the others still contribute records to frames. Sequential
/// streams generate active stops, lookup streams passive ones.
struct StreamDescriptor {
  StreamId id;
  StreamMode mode = StreamMode::Sequential;
  bool ofInterest = true;
};

/// One time-stamped datum in a stream; the unit of change. Payload bytes are
/// opaque to the engine.
struct Record {
  StreamId stream;
  TimeStamp time;
  std::string payload;

  friend bool operator==(const Record& a, const Record& b) {
    return a.stream == b.stream && a.time == b.time && a.payload == b.payload;
  }
};

/// The occurrence of a new record in a stream of interest. Active stops come
/// from sequential streams and drive the run; a passive stop occurs in
/// response to an upcoming active stop and is always delivered before it.
struct Stop {
  StreamId stream;
  TimeStamp time;
  StopKind kind = StopKind::Active;

  friend bool operator==(const Stop& a, const Stop& b) {
    return a.stream == b.stream && a.time == b.time && a.kind == b.kind;
  }
};

}  // namespace framestream::engine
