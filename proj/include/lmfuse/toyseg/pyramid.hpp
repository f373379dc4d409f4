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

#ifndef LMFUSE_TOYSEG_PYRAMID_HPP_
#define LMFUSE_TOYSEG_PYRAMID_HPP_

#include <vector>

#include "lmfuse/fusecore/params.hpp"

namespace lmfuse::toyseg {

// Channel count produced by the fixed encoder: value, horizontal gradient,
// vertical gradient, 3x3 local mean.
inline constexpr std::size_t kPyramidChannels = 4;

// Fixed (untrained) feature pyramid over a (1,H,W) image. Stage `stages` is
// the full-resolution one; stage i is average-pooled by 2^(stages-i). H and
// W must be divisible by 2^(stages-1).
std::vector<fusecore::StageInput> make_pyramid(const diffarray::Tensor& image,
                                               std::size_t stages);

}  // namespace lmfuse::toyseg

#endif  // LMFUSE_TOYSEG_PYRAMID_HPP_
