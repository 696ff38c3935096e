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

#include "framestream/loop/composite.hpp"

#include <stdexcept>

namespace framestream::loop {

namespace {

void requireChildren(const std::vector<std::shared_ptr<RecordListener>>& children, const char* what) {
  if (children.empty()) {
    throw std::invalid_argument(std::string(what) + " requires at least one listener");
  }
  for (const auto& child : children) {
    if (!child) throw std::invalid_argument(std::string(what) + " received a null listener");
  }
}

}  // namespace

CompositeListener::CompositeListener(std::vector<std::shared_ptr<RecordListener>> children)
    : children_(std::move(children)) {
  requireChildren(children_, "composite");
}

std::size_t CompositeListener::listenerCount() const {
  std::size_t count = 0;
  for (const auto& child : children_) count += child->listenerCount();
  return count;
}

std::uint64_t CompositeListener::vetoCount() const {
  std::uint64_t count = 0;
  for (const auto& child : children_) count += child->vetoCount();
  return count;
}

void CompositeListener::forward(const LoopMessage& message) {
  for (const auto& child : children_) {
    dispatchMessage(*child, message);
  }
}

void CompositeListener::configure(const ConfigurationEvent& event) { forward(LoopMessage::configure(event)); }
void CompositeListener::reconfigure(const ConfigurationEvent& event) { forward(LoopMessage::reconfigure(event)); }
void CompositeListener::resume(const RecordEvent& event) { forward(LoopMessage::resume(event)); }
void CompositeListener::suspend(const RecordEvent& event) { forward(LoopMessage::suspend(event)); }
void CompositeListener::finish(const RecordEvent& event) { forward(LoopMessage::finish(event)); }
void CompositeListener::recordSupplied(const RecordSuppliedEvent& event) {
  forward(LoopMessage::recordSupplied(event));
}

ConditionalListener::ConditionalListener(std::shared_ptr<FilterListener> predicate,
                                         std::shared_ptr<RecordListener> downstream)
    : predicate_(std::move(predicate)), downstream_(std::move(downstream)) {
  if (!predicate_ || !downstream_) {
    throw std::invalid_argument("conditional requires a predicate and a downstream listener");
  }
}

std::size_t ConditionalListener::listenerCount() const {
  return predicate_->listenerCount() + downstream_->listenerCount();
}

std::uint64_t ConditionalListener::vetoCount() const {
  return vetoes_ + predicate_->vetoCount() + downstream_->vetoCount();
}

void ConditionalListener::forwardBoth(const LoopMessage& message) {
  dispatchMessage(*predicate_, message);
  dispatchMessage(*downstream_, message);
}

void ConditionalListener::configure(const ConfigurationEvent& event) { forwardBoth(LoopMessage::configure(event)); }
void ConditionalListener::reconfigure(const ConfigurationEvent& event) {
  forwardBoth(LoopMessage::reconfigure(event));
}
void ConditionalListener::resume(const RecordEvent& event) { forwardBoth(LoopMessage::resume(event)); }
void ConditionalListener::suspend(const RecordEvent& event) { forwardBoth(LoopMessage::suspend(event)); }
void ConditionalListener::finish(const RecordEvent& event) { forwardBoth(LoopMessage::finish(event)); }

void ConditionalListener::recordSupplied(const RecordSuppliedEvent& event) {
  const auto message = LoopMessage::recordSupplied(event);
  dispatchMessage(*predicate_, message);
  if (predicate_->lastVerdict()) {
    dispatchMessage(*downstream_, message);
  } else {
    ++vetoes_;
  }
}

std::shared_ptr<RecordListener> sequence(std::vector<std::shared_ptr<RecordListener>> listeners) {
  requireChildren(listeners, "sequence");
  return std::make_shared<SequenceListener>(std::move(listeners));
}

std::shared_ptr<RecordListener> branch(std::vector<std::shared_ptr<RecordListener>> branches) {
  requireChildren(branches, "branch");
  return std::make_shared<BranchListener>(std::move(branches));
}

std::shared_ptr<RecordListener> conditional(std::shared_ptr<FilterListener> predicate,
                                            std::shared_ptr<RecordListener> downstream) {
  return std::make_shared<ConditionalListener>(std::move(predicate), std::move(downstream));
}

}  // namespace framestream::loop
