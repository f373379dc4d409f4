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

#include "lmfuse/diffarray/tape.hpp"

namespace lmfuse::diffarray {

std::span<double> BackwardContext::parent_grad(std::size_t k) {
  const std::size_t node = parents_.at(k);
  auto& slot = grads_[node];
  if (!slot) slot.emplace(parent_sizes_.at(k), 0.0);
  return std::span<double>(*slot);
}

Tensor GradTape::leaf(const Tensor& t) {
  if (t.on_tape()) {
    throw ContractError("GradTape::leaf: tensor is already bound to a tape");
  }
  Tensor bound = t;
  bound.requires_grad_ = true;
  bound.tape_ = this;
  bound.node_ = nodes_.size();
  nodes_.push_back(Node{{}, {}, nullptr, t.size()});
  return bound;
}

Tensor GradTape::record(Shape out_shape, std::vector<double> out_values,
                        const std::vector<const Tensor*>& parents,
                        BackwardFn backward) {
  std::vector<std::size_t> ids;
  std::vector<std::size_t> sizes;
  ids.reserve(parents.size());
  sizes.reserve(parents.size());
  for (const Tensor* p : parents) {
    if (p->tape_ != this || p->node_ == Tensor::kNoNode) {
      throw ContractError("GradTape::record: parent is not on this tape");
    }
    ids.push_back(p->node_);
    sizes.push_back(p->size());
  }
  Tensor out(out_shape, std::move(out_values));
  out.tape_ = this;
  out.node_ = nodes_.size();
  nodes_.push_back(Node{std::move(ids), std::move(sizes), std::move(backward),
                        out.size()});
  return out;
}

Gradients GradTape::backward(const Tensor& loss) const {
  if (loss.tape_ != this || loss.node_ == Tensor::kNoNode) {
    throw ContractError("backward: loss is not recorded on this tape");
  }
  if (loss.shape().total() != 1) {
    throw ContractError("backward: loss must be scalar, got shape " +
                        loss.shape().str());
  }

  Gradients g;
  g.tape_ = this;
  g.by_node_.resize(nodes_.size());
  g.by_node_[loss.node_].emplace(1, 1.0);

  for (std::size_t id = loss.node_ + 1; id-- > 0;) {
    const Node& node = nodes_[id];
    if (!g.by_node_[id] || !node.backward) continue;
    BackwardContext ctx(g.by_node_, node.parents, node.parent_sizes);
    node.backward(std::span<const double>(*g.by_node_[id]), ctx);
  }
  return g;
}

Tensor Gradients::at(const Tensor& leaf) const {
  if (leaf.tape() != tape_ || leaf.node() >= by_node_.size()) {
    throw ContractError("Gradients::at: tensor is not a node of this tape");
  }
  if (!leaf.requires_grad()) {
    throw ContractError("Gradients::at: tensor is not a gradient leaf");
  }
  const auto& slot = by_node_[leaf.node()];
  if (!slot) return Tensor::zeros(leaf.shape());
  return Tensor(leaf.shape(), *slot);
}

bool Gradients::contains(const Tensor& leaf) const {
  return leaf.node() < by_node_.size() && by_node_[leaf.node()].has_value();
}

}  // namespace lmfuse::diffarray
