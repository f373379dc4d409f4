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

#ifndef LMFUSE_FUSECORE_PARAMS_HPP_
#define LMFUSE_FUSECORE_PARAMS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lmfuse/diffarray/ops.hpp"
#include "lmfuse/diffarray/tape.hpp"
#include "lmfuse/diffarray/tensor.hpp"

namespace lmfuse::fusecore {

using diffarray::Tensor;

// One encoder skip connection. Stage 1 is the coarsest (bottom of the
// pyramid), stage L the finest; spatial sizes must be non-decreasing in the
// index.
struct StageInput {
  std::size_t index = 0;  // 1-based
  Tensor x;
};

// The memory stream carried across the decode: mem_channels channels at the
// full output resolution, initialized to zero.
struct MemoryFlow {
  Tensor y;
};

struct StageAlign {
  Tensor weight;  // (mem, C_i, 1)
  Tensor bias;    // (mem, 1, 1)
};

struct MixerParams {
  Tensor weight;  // (mem, mem, 1)
  Tensor bias;    // (mem, 1, 1)
};

struct HeadParams {
  Tensor weight;  // (classes, mem, 1)
  Tensor bias;    // (classes, 1, 1)
};

// Learnable state of the fusion decoder: per-stage alignment of the skip
// features into memory space, the per-pixel memory mixer (shared across
// stages by default, optionally one per stage), and the 1x1 head that maps
// the final memory flow to class logits.
struct FuseParams {
  std::vector<StageAlign> aligns;   // one per stage
  std::vector<MixerParams> mixers;  // size 1 (shared) or stages()
  HeadParams head;
  diffarray::Activation activation = diffarray::Activation::kRelu;
  std::size_t n_classes = 1;
  std::size_t mem_channels = 2;

  std::size_t stages() const { return aligns.size(); }
  bool shared_mixer() const { return mixers.size() == 1; }
  const MixerParams& mixer_for(std::size_t stage) const {
    return mixers[shared_mixer() ? 0 : stage - 1];
  }
  std::vector<std::size_t> stage_channels() const;

  // Shape consistency; throws DimensionError on violations.
  void validate() const;

  // Zero-initialized parameters. Default memory width is twice the class
  // count.
  static FuseParams zeros(const std::vector<std::size_t>& stage_channels,
                          std::size_t n_classes, std::size_t mem_channels,
                          diffarray::Activation act, bool shared_mixer = true);

  // Uniform(-scale, scale) weights, zero biases; deterministic in the seed.
  static FuseParams random(const std::vector<std::size_t>& stage_channels,
                           std::size_t n_classes, std::size_t mem_channels,
                           diffarray::Activation act, std::uint64_t seed,
                           double scale = 0.3, bool shared_mixer = true);

  // Copy with every tensor registered as a gradient leaf on the tape.
  FuseParams bound_to(diffarray::GradTape& tape) const;

  // Stable role -> tensor enumeration ("g1.weight", "f.bias",
  // "head.weight", ...). Roles double as checkpoint keys.
  std::vector<std::pair<std::string, const Tensor*>> named() const;
  std::vector<std::pair<std::string, Tensor*>> named();
};

}  // namespace lmfuse::fusecore

#endif  // LMFUSE_FUSECORE_PARAMS_HPP_
