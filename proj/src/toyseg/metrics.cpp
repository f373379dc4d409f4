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

#include "lmfuse/toyseg/metrics.hpp"

#include "lmfuse/errors.hpp"

namespace lmfuse::toyseg {

using diffarray::Tensor;

double dice_score(const Tensor& pred, const Tensor& truth) {
  if (pred.shape() != truth.shape()) {
    throw DimensionError("dice_score: shapes differ");
  }
  double a = 0.0, b = 0.0, inter = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = pred.data()[i], t = truth.data()[i];
    if ((p != 0.0 && p != 1.0) || (t != 0.0 && t != 1.0)) {
      throw ContractError("dice_score: masks must be strictly binary");
    }
    a += p;
    b += t;
    inter += p * t;
  }
  if (a + b == 0.0) return 1.0;
  return 2.0 * inter / (a + b);
}

Tensor binarize(const Tensor& t, double threshold) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    out[i] = t.data()[i] > threshold ? 1.0 : 0.0;
  }
  return Tensor(t.shape(), std::move(out));
}

}  // namespace lmfuse::toyseg
