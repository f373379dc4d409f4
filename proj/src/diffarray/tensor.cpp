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

#include "lmfuse/diffarray/tensor.hpp"

#include <cmath>

namespace lmfuse::diffarray {

Tensor::Tensor(Shape shape, std::vector<double> values) : shape_(shape) {
  if (values.size() != shape.total()) {
    throw DimensionError("Tensor: " + std::to_string(values.size()) +
                         " values for shape " + shape.str());
  }
  data_ = std::make_shared<const std::vector<double>>(std::move(values));
}

Tensor Tensor::zeros(Shape shape) {
  return Tensor(shape, std::vector<double>(shape.total(), 0.0));
}

Tensor Tensor::full(Shape shape, double value) {
  return Tensor(shape, std::vector<double>(shape.total(), value));
}

double Tensor::scalar() const {
  if (shape_.total() != 1) {
    throw ContractError("Tensor::scalar on shape " + shape_.str());
  }
  return (*data_)[0];
}

bool Tensor::all_finite() const {
  for (double v : data()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace lmfuse::diffarray
