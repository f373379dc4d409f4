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

#ifndef LMFUSE_FUSECORE_CHECKPOINT_HPP_
#define LMFUSE_FUSECORE_CHECKPOINT_HPP_

#include <string>

#include "lmfuse/fusecore/params.hpp"

namespace lmfuse::fusecore {

// Parameter checkpoint: a directory of FTNSR tensors plus manifest.txt
// mapping each role to its file, with the scalar configuration up front:
//
//   lmfuse-params v1
//   classes = 1
//   mem_channels = 2
//   activation = relu
//   g1.weight = g1_weight.ftnsr
//   ...
void save_params(const std::string& dir, const FuseParams& params);
FuseParams load_params(const std::string& dir);

}  // namespace lmfuse::fusecore

#endif  // LMFUSE_FUSECORE_CHECKPOINT_HPP_
