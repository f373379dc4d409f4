/* Copyright 2026 The lmfuse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef LMFUSE_MULTISTEP_HISTORY_HPP_
#define LMFUSE_MULTISTEP_HISTORY_HPP_

#include <cstddef>
#include <deque>
#include <utility>

#include "lmfuse/errors.hpp"

namespace lmfuse::multistep {

// Bounded FIFO of the most recent right-hand-side evaluations. Node indices
// must arrive strictly increasing and consecutive; pushing past the capacity
// evicts the oldest entry. Capacity is 4, the highest step count any
// supported scheme consumes.
//
// Reads through value_from_newest() are counted so tests can assert that a
// step touched no more entries than its step count.
template <typename State>
class RhsHistory {
 public:
  static constexpr std::size_t kCapacity = 4;

  void push(long node, State value) {
    if (!entries_.empty() && node != entries_.back().first + 1) {
      throw ContractError("RhsHistory: node indices must be consecutive");
    }
    entries_.emplace_back(node, std::move(value));
    if (entries_.size() > kCapacity) entries_.pop_front();
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  long newest_node() const {
    if (entries_.empty()) throw HistoryUnderflowError("RhsHistory: empty");
    return entries_.back().first;
  }

  // k = 0 is the newest entry, k = size()-1 the oldest retained one.
  const State& value_from_newest(std::size_t k) const {
    if (k >= entries_.size()) {
      throw HistoryUnderflowError("RhsHistory: asked for entry " +
                                  std::to_string(k) + " of " +
                                  std::to_string(entries_.size()));
    }
    ++reads_;
    return entries_[entries_.size() - 1 - k].second;
  }

  std::size_t reads() const { return reads_; }
  void reset_reads() { reads_ = 0; }

 private:
  std::deque<std::pair<long, State>> entries_;
  mutable std::size_t reads_ = 0;
};

}  // namespace lmfuse::multistep

#endif  // LMFUSE_MULTISTEP_HISTORY_HPP_
