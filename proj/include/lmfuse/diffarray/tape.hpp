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

#ifndef LMFUSE_DIFFARRAY_TAPE_HPP_
#define LMFUSE_DIFFARRAY_TAPE_HPP_

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lmfuse/diffarray/tensor.hpp"

namespace lmfuse::diffarray {

class GradTape;

// Gradients produced by one backward pass, keyed by tape node. Leaves that
// the loss never touched report zeros of the leaf's shape.
class Gradients {
 public:
  Tensor at(const Tensor& leaf) const;
  bool contains(const Tensor& leaf) const;

 private:
  friend class GradTape;
  const GradTape* tape_ = nullptr;
  std::vector<std::optional<std::vector<double>>> by_node_;
};

// Hands a backward function write access to its parents' gradient buffers.
class BackwardContext {
 public:
  // Zero-initialized accumulation buffer for the k-th parent.
  std::span<double> parent_grad(std::size_t k);

 private:
  friend class GradTape;
  BackwardContext(std::vector<std::optional<std::vector<double>>>& grads,
                  const std::vector<std::size_t>& parents,
                  const std::vector<std::size_t>& parent_sizes)
      : grads_(grads), parents_(parents), parent_sizes_(parent_sizes) {}
  std::vector<std::optional<std::vector<double>>>& grads_;
  const std::vector<std::size_t>& parents_;
  const std::vector<std::size_t>& parent_sizes_;
};

// Reverse-mode tape over a closed op set. Append-only: each recorded node
// lists its parents (which always precede it), so one reverse sweep from the
// loss visits nodes in valid topological order.
//
// A tape is confined to one logical thread. Independent tapes may run in
// parallel.
class GradTape {
 public:
  using BackwardFn =
      std::function<void(std::span<const double> grad_out, BackwardContext&)>;

  GradTape() = default;
  GradTape(const GradTape&) = delete;
  GradTape& operator=(const GradTape&) = delete;

  // Registers a gradient-carrying leaf; returns a copy bound to this tape.
  Tensor leaf(const Tensor& t);

  // Records an op result. `parents` must already live on this tape. The
  // backward function receives the output gradient and scatters into the
  // parents' buffers. This is also the extension point for fused ops
  // defined outside the core op set.
  Tensor record(Shape out_shape, std::vector<double> out_values,
                const std::vector<const Tensor*>& parents, BackwardFn backward);

  // Reverse sweep from a scalar loss. Throws ContractError when the loss is
  // not a (1,1,1) tensor recorded on this tape.
  Gradients backward(const Tensor& loss) const;

  std::size_t node_count() const { return nodes_.size(); }

 private:
  friend class Gradients;
  struct Node {
    std::vector<std::size_t> parents;
    std::vector<std::size_t> parent_sizes;
    BackwardFn backward;  // empty for leaves
    std::size_t size = 0;
  };
  std::vector<Node> nodes_;
};

}  // namespace lmfuse::diffarray

#endif  // LMFUSE_DIFFARRAY_TAPE_HPP_
