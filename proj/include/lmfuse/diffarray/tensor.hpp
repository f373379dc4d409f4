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

#ifndef LMFUSE_DIFFARRAY_TENSOR_HPP_
#define LMFUSE_DIFFARRAY_TENSOR_HPP_

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lmfuse/errors.hpp"

namespace lmfuse::diffarray {

class GradTape;

// Rank-3 shape: channels x height x width, channel outermost in memory.
struct Shape {
  std::size_t c = 0;
  std::size_t h = 0;
  std::size_t w = 0;

  std::size_t total() const { return c * h * w; }
  bool operator==(const Shape&) const = default;
  std::string str() const {
    return "(" + std::to_string(c) + "," + std::to_string(h) + "," +
           std::to_string(w) + ")";
  }
};

// Dense rank-3 real64 tensor. Immutable after construction; ops return new
// tensors. The data buffer is shared between copies, which makes tensors
// cheap to stash in histories and tape closures.
//
// A tensor may be bound to a GradTape, in which case it carries the id of
// the tape node that produced it. Binding happens through GradTape::leaf()
// (gradient-carrying inputs) or through recorded ops.
class Tensor {
 public:
  static constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

  Tensor() = default;
  Tensor(Shape shape, std::vector<double> values);

  static Tensor zeros(Shape shape);
  static Tensor full(Shape shape, double value);

  const Shape& shape() const { return shape_; }
  std::size_t size() const { return shape_.total(); }
  std::span<const double> data() const {
    return data_ ? std::span<const double>(*data_) : std::span<const double>();
  }

  // Iteration over entries; safe on temporaries (range-for extends the
  // tensor's lifetime, unlike iterating a .data() view of a temporary).
  std::vector<double>::const_iterator begin() const {
    return storage().begin();
  }
  std::vector<double>::const_iterator end() const { return storage().end(); }

  double at(std::size_t c, std::size_t h, std::size_t w) const {
    return (*data_)[(c * shape_.h + h) * shape_.w + w];
  }

  // Value of a (1,1,1) tensor; throws ContractError otherwise.
  double scalar() const;

  bool requires_grad() const { return requires_grad_; }
  GradTape* tape() const { return tape_; }
  std::size_t node() const { return node_; }
  bool on_tape() const { return tape_ != nullptr; }

  bool all_finite() const;

 private:
  friend class GradTape;

  const std::vector<double>& storage() const {
    static const std::vector<double> kEmpty;
    return data_ ? *data_ : kEmpty;
  }

  Shape shape_{};
  std::shared_ptr<const std::vector<double>> data_;
  bool requires_grad_ = false;
  GradTape* tape_ = nullptr;
  std::size_t node_ = kNoNode;
};

}  // namespace lmfuse::diffarray

#endif  // LMFUSE_DIFFARRAY_TENSOR_HPP_
