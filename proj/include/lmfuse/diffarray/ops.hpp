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

#ifndef LMFUSE_DIFFARRAY_OPS_HPP_
#define LMFUSE_DIFFARRAY_OPS_HPP_

#include <functional>
#include <span>
#include <vector>

#include "lmfuse/diffarray/tape.hpp"
#include "lmfuse/diffarray/tensor.hpp"

namespace lmfuse::diffarray {

enum class Activation { kIdentity, kRelu, kSigmoid, kTanh };

Activation activation_from_string(const std::string& s);
std::string activation_name(Activation a);

// Per-pixel channel mixing, i.e. a 1x1 convolution.
//   out[c,h,w] = sum_k weight[c,k] * x[k,h,w] + bias[c]
// weight has shape (C_out, C, 1), bias (C_out, 1, 1).
Tensor channel_project(const Tensor& x, const Tensor& weight,
                       const Tensor& bias);

// Corner-aligned bilinear resize to (out_h, out_w). Resizing to the input
// shape is the identity bit-for-bit, and constant fields stay constant
// exactly.
Tensor resize_bilinear(const Tensor& x, std::size_t out_h, std::size_t out_w);

// Elementwise nonlinearity; shape preserved.
Tensor pointwise(const Tensor& x, Activation act);

// out = sum_j coeffs[j] * terms[j]; all terms share one shape.
Tensor weighted_sum(std::span<const double> coeffs,
                    const std::vector<Tensor>& terms);

// Reduction to a (1,1,1) scalar tensor.
Tensor sum(const Tensor& x);

// Central-difference gradient of a scalar-valued function, entry by entry:
//   (fn(x + eps e_i) - fn(x - eps e_i)) / (2 eps).
// The verification oracle for backward(); fn sees untaped tensors.
Tensor finite_diff_grad(const std::function<double(const Tensor&)>& fn,
                        const Tensor& x, double eps);

}  // namespace lmfuse::diffarray

#endif  // LMFUSE_DIFFARRAY_OPS_HPP_
