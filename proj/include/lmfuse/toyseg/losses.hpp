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

#ifndef LMFUSE_TOYSEG_LOSSES_HPP_
#define LMFUSE_TOYSEG_LOSSES_HPP_

#include "lmfuse/diffarray/tape.hpp"
#include "lmfuse/diffarray/tensor.hpp"

namespace lmfuse::toyseg {

using diffarray::Tensor;

// Mean binary cross-entropy on raw logits, evaluated in the numerically
// stable max(z,0) - z t + log1p(exp(-|z|)) form. Taped when the logits are;
// the target is treated as a constant.
Tensor bce_with_logits(const Tensor& logits, const Tensor& target);

// Soft Dice loss 1 - (2 sum(p t) + eps) / (sum(p) + sum(t) + eps) with
// p = sigmoid(logits).
Tensor soft_dice_loss(const Tensor& logits, const Tensor& target,
                      double eps = 1.0);

// The training objective: bce_with_logits + soft_dice_loss, equally
// weighted.
Tensor segmentation_loss(const Tensor& logits, const Tensor& target);

}  // namespace lmfuse::toyseg

#endif  // LMFUSE_TOYSEG_LOSSES_HPP_
