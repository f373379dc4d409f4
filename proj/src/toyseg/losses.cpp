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

#include "lmfuse/toyseg/losses.hpp"

#include <cmath>

#include "lmfuse/diffarray/ops.hpp"

namespace lmfuse::toyseg {

namespace {

double stable_sigmoid(double v) {
  return v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
}

void check_pair(const Tensor& logits, const Tensor& target, const char* name) {
  if (logits.shape() != target.shape()) {
    throw DimensionError(std::string(name) + ": logits shape " +
                         logits.shape().str() + " vs target " +
                         target.shape().str());
  }
  if (target.on_tape()) {
    throw ContractError(std::string(name) + ": target must be a constant");
  }
}

}  // namespace

Tensor bce_with_logits(const Tensor& logits, const Tensor& target) {
  check_pair(logits, target, "bce_with_logits");
  const auto z = logits.data();
  const auto t = target.data();
  const double count = static_cast<double>(z.size());

  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    acc += std::max(z[i], 0.0) - z[i] * t[i] + std::log1p(std::exp(-std::abs(z[i])));
  }
  const double value = acc / count;

  if (!logits.on_tape()) return Tensor({1, 1, 1}, {value});
  Tensor zc = logits;
  Tensor tc = target;
  return logits.tape()->record(
      {1, 1, 1}, {value}, {&logits},
      [zc, tc, count](std::span<const double> g,
                      diffarray::BackwardContext& ctx) {
        auto gin = ctx.parent_grad(0);
        const auto z = zc.data();
        const auto t = tc.data();
        for (std::size_t i = 0; i < gin.size(); ++i) {
          gin[i] += g[0] * (stable_sigmoid(z[i]) - t[i]) / count;
        }
      });
}

Tensor soft_dice_loss(const Tensor& logits, const Tensor& target, double eps) {
  check_pair(logits, target, "soft_dice_loss");
  const auto z = logits.data();
  const auto t = target.data();

  std::vector<double> p(z.size());
  double sum_pt = 0.0, sum_p = 0.0, sum_t = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = stable_sigmoid(z[i]);
    sum_pt += p[i] * t[i];
    sum_p += p[i];
    sum_t += t[i];
  }
  const double num = 2.0 * sum_pt + eps;
  const double den = sum_p + sum_t + eps;
  const double value = 1.0 - num / den;

  if (!logits.on_tape()) return Tensor({1, 1, 1}, {value});
  Tensor tc = target;
  return logits.tape()->record(
      {1, 1, 1}, {value}, {&logits},
      [p = std::move(p), tc, num, den](std::span<const double> g,
                                       diffarray::BackwardContext& ctx) {
        auto gin = ctx.parent_grad(0);
        const auto t = tc.data();
        for (std::size_t i = 0; i < gin.size(); ++i) {
          const double dloss_dp = -(2.0 * t[i] * den - num) / (den * den);
          gin[i] += g[0] * dloss_dp * p[i] * (1.0 - p[i]);
        }
      });
}

Tensor segmentation_loss(const Tensor& logits, const Tensor& target) {
  return diffarray::weighted_sum(
      std::vector<double>{1.0, 1.0},
      {bce_with_logits(logits, target), soft_dice_loss(logits, target)});
}

}  // namespace lmfuse::toyseg
