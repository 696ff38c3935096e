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

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "framestream/engine/stop_engine.hpp"
#include "framestream/engine/stop_source.hpp"
#include "framestream/experiment/analyses.hpp"
#include "framestream/experiment/listener.hpp"
#include "framestream/experiment/streams.hpp"
#include "framestream/loop/composite.hpp"
#include "framestream/loop/record_loop.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace framestream;

namespace {

engine::Record rec(const std::string& stream, std::uint64_t ticks, const std::string& payload) {
  return {{stream, 0}, {ticks}, payload};
}

/// Sealed single-record frame driven by a stop of the same stream, for
/// feeding dispatch and analyses directly.
std::unique_ptr<engine::Frame> frameFor(const std::string& stream, std::uint64_t ticks,
                                        std::vector<engine::Record> contents = {}) {
  auto frame = std::make_unique<engine::BasicFrame>(
      engine::Stop{{stream, 0}, {ticks}, engine::StopKind::Active});
  frame->insert(rec(stream, ticks, stream + "@" + std::to_string(ticks)));
  for (engine::Record& record : contents) {
    frame->insert(std::move(record));
  }
  frame->seal();
  return frame;
}

/// Logs one token per call: handler initial plus frame time for frames,
/// lowercase letters for lifecycle notifications.
class ProbeListener final : public experiment::ExperimentListener {
 public:
  void geometry(const engine::Frame& frame) override { log("G", &frame); }
  void highVoltage(const engine::Frame& frame) override { log("H", &frame); }
  void event(const engine::Frame& frame) override { log("E", &frame); }
  void otherStream(const engine::Frame& frame) override { log("O", &frame); }

  void configure(const loop::ConfigurationEvent& event) override {
    log("c", nullptr);
    lastConfiguration_ = event.parameters();
  }
  void reconfigure(const loop::ConfigurationEvent& event) override {
    log("n", nullptr);
    lastConfiguration_ = event.parameters();
  }
  void resume(const loop::RecordEvent&) override { log("u", nullptr); }
  void suspend(const loop::RecordEvent&) override { log("s", nullptr); }
  void finish(const loop::RecordEvent&) override { log("f", nullptr); }

  const std::vector<std::string>& calls() const { return calls_; }
  const std::map<std::string, std::string>& lastConfiguration() const { return lastConfiguration_; }

 private:
  void log(const std::string& tag, const engine::Frame* frame) {
    calls_.push_back(frame ? tag + std::to_string(frame->time().ticks) : tag);
  }

  std::vector<std::string> calls_;
  std::map<std::string, std::string> lastConfiguration_;
};

/// Experiment-shaped random fixture: the three known streams plus a
/// fill-only calibration stream.
std::vector<testing::OracleStream> randomExperimentFixture(std::mt19937& rng) {
  std::uniform_int_distribution<std::uint64_t> tick(0, 30);
  std::uniform_int_distribution<std::size_t> count(0, 40);

  auto draw = [&](const std::string& name, std::uint32_t index, engine::StreamMode mode,
                  bool ofInterest) {
    std::vector<std::uint64_t> times(count(rng));
    for (auto& t : times) t = tick(rng);
    if (mode == engine::StreamMode::Sequential) std::sort(times.begin(), times.end());
    testing::OracleStream stream{{{name, index}, mode, ofInterest}, {}};
    for (std::size_t i = 0; i < times.size(); ++i) {
      stream.records.push_back(rec(name, times[i], name + std::to_string(i)));
    }
    return stream;
  };

  const bool hvLookup = std::bernoulli_distribution(0.5)(rng);
  return {
      draw("geometry", 0, engine::StreamMode::Lookup, true),
      draw("hv", 1, hvLookup ? engine::StreamMode::Lookup : engine::StreamMode::Sequential, true),
      draw("event", 2, engine::StreamMode::Sequential, true),
      draw("calib", 3, engine::StreamMode::Sequential, false),
  };
}

loop::LoopReport runFixture(const std::vector<testing::OracleStream>& streams,
                            std::shared_ptr<loop::RecordListener> listener,
                            std::shared_ptr<engine::FrameFactory> factory =
                                std::make_shared<engine::BasicFrameFactory>()) {
  auto stopEngine = std::make_shared<engine::StopEngine>();
  for (const auto& source : testing::memorySources(streams)) {
    stopEngine->registerStopSource(source);
  }
  loop::RecordLoop recordLoop(engine::frameSource(stopEngine, std::move(factory)), std::move(listener));
  const auto report = recordLoop.run(loop::ConfigurationEvent{});
  recordLoop.finish();
  return report;
}

}  // namespace

TEST_CASE("stream names map onto their handlers") {
  using experiment::StreamHandler;
  CHECK(experiment::handlerFor("geometry") == StreamHandler::Geometry);
  CHECK(experiment::handlerFor("hv") == StreamHandler::HighVoltage);
  CHECK(experiment::handlerFor("event") == StreamHandler::Event);
  CHECK(experiment::handlerFor("calib") == StreamHandler::Other);
  CHECK(experiment::handlerFor("") == StreamHandler::Other);
  CHECK(std::string(experiment::toString(StreamHandler::Geometry)) == "Geometry");
  CHECK(std::string(experiment::toString(StreamHandler::Other)) == "Other");
}

TEST_CASE("the experiment stream set wires the documented modes") {
  const auto streams = experiment::makeExperimentStreams();
  CHECK(streams.geometry.id.name == "geometry");
  CHECK(streams.geometry.mode == engine::StreamMode::Lookup);
  CHECK(streams.highVoltage.mode == engine::StreamMode::Sequential);
  CHECK(streams.event.mode == engine::StreamMode::Sequential);
  CHECK(streams.geometry.ofInterest);
  CHECK(streams.highVoltage.ofInterest);
  CHECK(streams.event.ofInterest);

  const auto lookupHv = experiment::makeExperimentStreams(engine::StreamMode::Lookup);
  CHECK(lookupHv.highVoltage.mode == engine::StreamMode::Lookup);
}

TEST_CASE("the dispatcher routes each frame to exactly one handler") {
  auto probe = std::make_shared<ProbeListener>();
  experiment::FrameDispatcher dispatcher(probe);

  CHECK(dispatcher.dispatchFrame(*frameFor("geometry", 0)) == experiment::StreamHandler::Geometry);
  CHECK(dispatcher.dispatchFrame(*frameFor("hv", 1)) == experiment::StreamHandler::HighVoltage);
  CHECK(dispatcher.dispatchFrame(*frameFor("event", 2)) == experiment::StreamHandler::Event);
  CHECK(dispatcher.dispatchFrame(*frameFor("calib", 3)) == experiment::StreamHandler::Other);
  CHECK(probe->calls() == std::vector<std::string>{"G0", "H1", "E2", "O3"});
}

TEST_CASE("the dispatcher rejects a null listener") {
  CHECK_THROWS_AS(experiment::FrameDispatcher(nullptr), std::invalid_argument);
  CHECK_THROWS_AS(experiment::adaptListener(nullptr), std::invalid_argument);
}

TEST_CASE("an adapted listener sees the run in experiment vocabulary") {
  const std::vector<testing::OracleStream> streams = {
      {{{"geometry", 0}, engine::StreamMode::Lookup, true}, {rec("geometry", 0, "g")}},
      {{{"event", 1}, engine::StreamMode::Sequential, true},
       {rec("event", 1, "e1"), rec("event", 2, "e2")}},
  };

  auto probe = std::make_shared<ProbeListener>();
  auto stopEngine = std::make_shared<engine::StopEngine>();
  for (const auto& source : testing::memorySources(streams)) {
    stopEngine->registerStopSource(source);
  }
  loop::RecordLoop recordLoop(
      engine::frameSource(stopEngine, std::make_shared<engine::BasicFrameFactory>()),
      experiment::adaptListener(probe));

  const auto report = recordLoop.run(
      loop::ConfigurationEvent(std::map<std::string, std::string>{{"threshold", "3"}}), 1);
  recordLoop.resume();
  recordLoop.finish();

  CHECK(report.recordsSupplied == 1);
  CHECK(probe->calls() ==
        std::vector<std::string>{"c", "G0", "s", "u", "E1", "E2", "s", "f"});
  CHECK(probe->lastConfiguration().at("threshold") == "3");
}

TEST_CASE("a non-frame record is rejected by the adapter") {
  auto plugin = experiment::adaptListener(std::make_shared<ProbeListener>());
  loop::dispatchMessage(*plugin, testing::messageFor(loop::MessageKind::Configure));
  CHECK_THROWS_AS(
      loop::dispatchMessage(*plugin, loop::LoopMessage::recordSupplied(
                                         loop::RecordSuppliedEvent(loop::RecordHandle(5), 1))),
      std::invalid_argument);
  testing::drainToDormant(*plugin);
}

TEST_CASE("handler call counts equal the per-stream stop counts") {
  std::mt19937 rng(42);
  for (int round = 0; round < 20; ++round) {
    CAPTURE(round);
    const auto streams = randomExperimentFixture(rng);

    std::map<std::string, std::uint64_t> stopsByStream;
    for (const engine::Stop& stop : testing::expectedStops(streams)) {
      ++stopsByStream[stop.stream.name];
    }

    auto probe = std::make_shared<ProbeListener>();
    runFixture(streams, experiment::adaptListener(probe));

    std::map<std::string, std::uint64_t> callsByHandler;
    for (const std::string& call : probe->calls()) {
      if (std::isupper(static_cast<unsigned char>(call[0]))) ++callsByHandler[call.substr(0, 1)];
    }
    CHECK(callsByHandler["G"] == stopsByStream["geometry"]);
    CHECK(callsByHandler["H"] == stopsByStream["hv"]);
    CHECK(callsByHandler["E"] == stopsByStream["event"]);
    CHECK(callsByHandler["O"] == 0);  // calib never drives a stop
  }
}

TEST_CASE("sample analyses keep shared frame bookkeeping") {
  experiment::EventCounter counter;
  counter.configure(loop::ConfigurationEvent{});
  counter.geometry(*frameFor("geometry", 0));
  counter.event(*frameFor("event", 3));
  counter.event(*frameFor("event", 9));

  const auto& summary = counter.summary();
  CHECK(summary.framesByStream.at("geometry") == 1);
  CHECK(summary.framesByStream.at("event") == 2);
  CHECK(summary.totalFrames() == 3);
  REQUIRE(summary.firstTime.has_value());
  CHECK(summary.firstTime->ticks == 0);
  REQUIRE(summary.lastTime.has_value());
  CHECK(summary.lastTime->ticks == 9);
  CHECK(counter.eventsSeen() == 2);

  SUBCASE("reconfiguration starts a fresh summary") {
    counter.reconfigure(loop::ConfigurationEvent{});
    CHECK(counter.summary().framesByStream.empty());
    CHECK_FALSE(counter.summary().firstTime.has_value());
    CHECK(counter.eventsSeen() == 0);

    counter.event(*frameFor("event", 12));
    CHECK(counter.eventsSeen() == 1);
    CHECK(counter.summary().firstTime->ticks == 12);
  }
}

TEST_CASE("the geometry change logger collapses repeated payloads") {
  experiment::GeometryChangeLogger logger;
  logger.configure(loop::ConfigurationEvent{});

  auto geometryFrame = [](std::uint64_t ticks, const std::string& payload) {
    auto frame = std::make_unique<engine::BasicFrame>(
        engine::Stop{{"geometry", 0}, {ticks}, engine::StopKind::Passive});
    frame->insert(rec("geometry", ticks, payload));
    frame->seal();
    return frame;
  };

  logger.geometry(*geometryFrame(0, "a"));
  logger.geometry(*geometryFrame(2, "a"));  // same payload, not a change
  logger.geometry(*geometryFrame(5, "b"));

  REQUIRE(logger.changes().size() == 2);
  CHECK(logger.changes()[0] == std::pair<engine::TimeStamp, std::string>{{0}, "a"});
  CHECK(logger.changes()[1] == std::pair<engine::TimeStamp, std::string>{{5}, "b"});
  CHECK(logger.summary().custom.at("geometry.changes") == "2");
  CHECK(logger.summary().custom.at("geometry.last") == "b");
  CHECK(logger.summary().framesByStream.at("geometry") == 3);
}

TEST_CASE("the hv monitor distinguishes events with and without hv context") {
  experiment::HvMonitor monitor;
  monitor.configure(loop::ConfigurationEvent{});

  monitor.event(*frameFor("event", 1));  // frame has no hv record yet
  monitor.event(*frameFor("event", 4, {rec("hv", 3, "1500V")}));
  monitor.event(*frameFor("event", 6, {rec("hv", 5, "1800V")}));

  CHECK(monitor.eventsWithHv() == 2);
  CHECK(monitor.eventsWithoutHv() == 1);
  CHECK(monitor.summary().custom.at("hv.last") == "1800V");
  CHECK(monitor.summary().custom.at("hv.eventsWith") == "2");
  CHECK(monitor.summary().custom.at("hv.eventsWithout") == "1");
}

TEST_CASE("summary serialization is exact and sorted") {
  experiment::AnalysisSummary summary;
  summary.framesByStream = {{"event", 2}, {"geometry", 1}};
  summary.firstTime = engine::TimeStamp{0};
  summary.lastTime = engine::TimeStamp{9};
  summary.custom = {{"events.count", "2"}};

  std::ostringstream out;
  experiment::writeSummary(out, "eventCounter", summary);
  CHECK(out.str() ==
        "listener=eventCounter\n"
        "events.count=2\n"
        "frames.event=2\n"
        "frames.geometry=1\n"
        "frames.total=3\n"
        "time.first=0\n"
        "time.last=9\n");

  SUBCASE("an empty summary still reports a zero total") {
    std::ostringstream empty;
    experiment::writeSummary(empty, "hvMonitor", experiment::AnalysisSummary{});
    CHECK(empty.str() ==
          "listener=hvMonitor\n"
          "frames.total=0\n");
  }
}

TEST_CASE("the slot frame is observationally identical to the basic frame") {
  const engine::Stop stop{{"event", 2}, {9}, engine::StopKind::Active};
  engine::BasicFrame basic(stop);
  experiment::SlotFrame slotted(stop);

  const std::vector<engine::Record> inserts = {
      rec("hv", 3, "old"),     rec("geometry", 0, "g"), rec("event", 9, "e"),
      rec("calib", 4, "k"),    rec("hv", 8, "new"),  // replaces the earlier hv record
      rec("alpha", 1, "a"),
  };
  for (const auto& record : inserts) {
    basic.insert(record);
    slotted.insert(record);
  }

  for (const std::string name : {"geometry", "hv", "event", "calib", "alpha", "missing"}) {
    const auto* expected = basic.find(name);
    const auto* actual = slotted.find(name);
    REQUIRE((expected == nullptr) == (actual == nullptr));
    if (expected != nullptr) CHECK(*actual == *expected);
  }

  const auto expectedContents = basic.contents();
  const auto actualContents = slotted.contents();
  REQUIRE(actualContents.size() == expectedContents.size());
  for (std::size_t i = 0; i < expectedContents.size(); ++i) {
    CHECK(actualContents[i].get() == expectedContents[i].get());
  }
  CHECK(slotted.find("hv")->payload == "new");
}

TEST_CASE("the experiment factory plugs into the engine unchanged") {
  std::mt19937 rng(7);
  for (int round = 0; round < 10; ++round) {
    CAPTURE(round);
    const auto streams = randomExperimentFixture(rng);

    auto runWith = [&](std::shared_ptr<engine::FrameFactory> factory) {
      auto probe = std::make_shared<testing::TraceListener>();
      runFixture(streams, probe, std::move(factory));
      std::vector<std::map<std::string, engine::Record>> frames;
      for (const auto& handle : probe->records()) {
        const auto frame = engine::frameOf(handle);
        std::map<std::string, engine::Record> byStream;
        for (const engine::Record& record : frame->contents()) {
          byStream.emplace(record.stream.name, record);
        }
        frames.push_back(std::move(byStream));
      }
      return frames;
    };

    const auto viaBasic = runWith(std::make_shared<engine::BasicFrameFactory>());
    const auto viaSlots = runWith(std::make_shared<experiment::ExperimentFrameFactory>());
    CHECK(viaBasic == viaSlots);
  }
}

TEST_CASE("the bundled analyses agree with the oracle over a full run") {
  std::mt19937 rng(20260814);
  for (int round = 0; round < 10; ++round) {
    CAPTURE(round);
    const auto streams = randomExperimentFixture(rng);
    const auto stops = testing::expectedStops(streams);

    const auto bundle = experiment::sampleAnalyses();
    auto root = loop::sequence({
        experiment::adaptListener(bundle.eventCounter),
        experiment::adaptListener(bundle.geometryChangeLogger),
        experiment::adaptListener(bundle.hvMonitor),
    });
    const auto report = runFixture(streams, root);

    std::uint64_t eventStops = 0;
    for (const auto& stop : stops) {
      if (stop.stream.name == "event") ++eventStops;
    }
    CHECK(report.recordsSupplied == stops.size());
    CHECK(bundle.eventCounter->eventsSeen() == eventStops);
    CHECK(bundle.eventCounter->summary().totalFrames() == stops.size());
    CHECK(bundle.hvMonitor->eventsWithHv() + bundle.hvMonitor->eventsWithoutHv() == eventStops);

    // Each hv verdict is checkable against the frame oracle at that stop.
    std::uint64_t expectWith = 0;
    for (const auto& stop : stops) {
      if (stop.stream.name != "event") continue;
      if (testing::expectedFrame(streams, stop.time).count("hv") > 0) ++expectWith;
    }
    CHECK(bundle.hvMonitor->eventsWithHv() == expectWith);
  }
}
