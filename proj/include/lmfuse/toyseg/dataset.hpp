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

#ifndef LMFUSE_TOYSEG_DATASET_HPP_
#define LMFUSE_TOYSEG_DATASET_HPP_

#include <cstdint>
#include <vector>

#include "lmfuse/diffarray/tensor.hpp"

namespace lmfuse::toyseg {

using diffarray::Tensor;

// One grayscale image in [0,1] with its strictly binary mask, both (1,H,W).
struct Sample {
  Tensor image;
  Tensor mask;
};

// Deterministic synthetic scenes: a noisy background with 1..3 anti-aliased
// ellipses or rectangles; the mask is the union of the shape interiors.
// Requires height, width >= 16.
std::vector<Sample> synth_dataset(std::size_t n, std::size_t height,
                                  std::size_t width, std::uint64_t seed);

// Fraction of mask pixels set, averaged over the samples.
double mean_mask_coverage(const std::vector<Sample>& samples);

}  // namespace lmfuse::toyseg

#endif  // LMFUSE_TOYSEG_DATASET_HPP_
