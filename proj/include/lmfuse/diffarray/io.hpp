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

#ifndef LMFUSE_DIFFARRAY_IO_HPP_
#define LMFUSE_DIFFARRAY_IO_HPP_

#include <string>

#include "lmfuse/diffarray/tensor.hpp"

namespace lmfuse::diffarray {

// FTNSR v1 container:
//   line 1: "FTNSR v1"
//   line 2: "dtype=f64 shape=C,H,W"
//   payload: C*H*W little-endian real64 values, row-major, channel outermost
// Round-trips are bit-exact.
void save_tensor(const std::string& path, const Tensor& t);
Tensor load_tensor(const std::string& path);

}  // namespace lmfuse::diffarray

#endif  // LMFUSE_DIFFARRAY_IO_HPP_
