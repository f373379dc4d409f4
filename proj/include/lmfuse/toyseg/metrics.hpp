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

#ifndef LMFUSE_TOYSEG_METRICS_HPP_
#define LMFUSE_TOYSEG_METRICS_HPP_

#include "lmfuse/diffarray/tensor.hpp"

namespace lmfuse::toyseg {

// Overlap 2|A n B| / (|A| + |B|) of two strictly binary masks of one shape;
// two empty masks score 1. Throws ContractError on non-binary entries.
double dice_score(const diffarray::Tensor& pred, const diffarray::Tensor& truth);

// 1 where the tensor exceeds the threshold, else 0.
diffarray::Tensor binarize(const diffarray::Tensor& t, double threshold = 0.5);

}  // namespace lmfuse::toyseg

#endif  // LMFUSE_TOYSEG_METRICS_HPP_
