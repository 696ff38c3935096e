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
#include <functional>
#include <memory>
#include <vector>

#include "framestream/loop/listener.hpp"

namespace framestream::loop {

/// Shared forwarding machinery for sequence and branch composites. Every
/// message is re-dispatched to each child in order, so the children's states
/// always mirror the composite's own. An IllegalTransition raised by a child
/// aborts forwarding to the children after it for that message.
class CompositeListener : public RecordListener {
 public:
  std::size_t listenerCount() const override;
  std::uint64_t vetoCount() const override;

  const std::vector<std::shared_ptr<RecordListener>>& children() const { return children_; }

 protected:
  explicit CompositeListener(std::vector<std::shared_ptr<RecordListener>> children);

  void configure(const ConfigurationEvent& event) override;
  void reconfigure(const ConfigurationEvent& event) override;
  void resume(const RecordEvent& event) override;
  void suspend(const RecordEvent& event) override;
  void finish(const RecordEvent& event) override;
  void recordSupplied(const RecordSuppliedEvent& event) override;

 private:
  void forward(const LoopMessage& message);

  std::vector<std::shared_ptr<RecordListener>> children_;
};

/// Executes its children one after the other for every message.
class SequenceListener final : public CompositeListener {
 public:
  explicit SequenceListener(std::vector<std::shared_ptr<RecordListener>> children)
      : CompositeListener(std::move(children)) {}
};

/// Executes independent branches. A veto inside one branch (see
/// ConditionalListener) only suppresses that branch's own downstream; sibling
/// branches always see every record.
class BranchListener final : public CompositeListener {
 public:
  explicit BranchListener(std::vector<std::shared_ptr<RecordListener>> branches)
      : CompositeListener(std::move(branches)) {}
};

/// A listener that also renders a per-record accept/veto verdict. The verdict
/// is produced while the record is dispatched through the normal lifecycle,
/// so a filter's observed message trace is identical to any other listener's.
class FilterListener : public RecordListener {
 public:
  bool lastVerdict() const { return verdict_; }

  /// Decides whether downstream listeners should see this record.
  virtual bool accept(const RecordSuppliedEvent& event) = 0;

 protected:
  void recordSupplied(const RecordSuppliedEvent& event) final { verdict_ = accept(event); }

 private:
  bool verdict_ = true;
};

/// Filter over an arbitrary predicate function.
class PredicateFilter final : public FilterListener {
 public:
  explicit PredicateFilter(std::function<bool(const RecordSuppliedEvent&)> predicate)
      : predicate_(std::move(predicate)) {}

  bool accept(const RecordSuppliedEvent& event) override { return predicate_(event); }

 private:
  std::function<bool(const RecordSuppliedEvent&)> predicate_;
};

/// Preemptive termination of a downstream composite: the predicate sees every
/// record first; on veto the downstream does not receive that record. All
/// non-record lifecycle messages are always forwarded to both, so predicate
/// and downstream stay in lockstep with the composite.
class ConditionalListener final : public RecordListener {
 public:
  ConditionalListener(std::shared_ptr<FilterListener> predicate, std::shared_ptr<RecordListener> downstream);

  std::size_t listenerCount() const override;
  std::uint64_t vetoCount() const override;

 protected:
  void configure(const ConfigurationEvent& event) override;
  void reconfigure(const ConfigurationEvent& event) override;
  void resume(const RecordEvent& event) override;
  void suspend(const RecordEvent& event) override;
  void finish(const RecordEvent& event) override;
  void recordSupplied(const RecordSuppliedEvent& event) override;

 private:
  void forwardBoth(const LoopMessage& message);

  std::shared_ptr<FilterListener> predicate_;
  std::shared_ptr<RecordListener> downstream_;
  std::uint64_t vetoes_ = 0;
};

/// Composes listeners to be executed sequentially. The list must be non-empty.
std::shared_ptr<RecordListener> sequence(std::vector<std::shared_ptr<RecordListener>> listeners);

/// Composes sequences to be executed independently of each other.
std::shared_ptr<RecordListener> branch(std::vector<std::shared_ptr<RecordListener>> branches);

/// Guards `downstream` with `predicate`; vetoed records never reach it.
std::shared_ptr<RecordListener> conditional(std::shared_ptr<FilterListener> predicate,
                                            std::shared_ptr<RecordListener> downstream);

}  // namespace framestream::loop
