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

#include "lmfuse/fusecore/params.hpp"

#include <random>

namespace lmfuse::fusecore {

using diffarray::Shape;

std::vector<std::size_t> FuseParams::stage_channels() const {
  std::vector<std::size_t> out;
  out.reserve(aligns.size());
  for (const StageAlign& a : aligns) out.push_back(a.weight.shape().h);
  return out;
}

void FuseParams::validate() const {
  const std::size_t m = mem_channels;
  if (aligns.empty()) throw DimensionError("FuseParams: no stages");
  if (mixers.size() != 1 && mixers.size() != aligns.size()) {
    throw DimensionError("FuseParams: mixer count must be 1 or the stage count");
  }
  for (std::size_t i = 0; i < aligns.size(); ++i) {
    const auto& a = aligns[i];
    if (a.weight.shape().c != m || a.weight.shape().w != 1 ||
        a.bias.shape() != Shape{m, 1, 1}) {
      throw DimensionError("FuseParams: stage " + std::to_string(i + 1) +
                           " alignment shapes are inconsistent");
    }
  }
  for (const auto& f : mixers) {
    if (f.weight.shape() != Shape{m, m, 1} || f.bias.shape() != Shape{m, 1, 1}) {
      throw DimensionError("FuseParams: mixer shapes are inconsistent");
    }
  }
  if (head.weight.shape() != Shape{n_classes, m, 1} ||
      head.bias.shape() != Shape{n_classes, 1, 1}) {
    throw DimensionError("FuseParams: head shapes are inconsistent");
  }
}

FuseParams FuseParams::zeros(const std::vector<std::size_t>& stage_channels,
                             std::size_t n_classes, std::size_t mem_channels,
                             diffarray::Activation act, bool shared_mixer) {
  FuseParams p;
  p.activation = act;
  p.n_classes = n_classes;
  p.mem_channels = mem_channels;
  for (std::size_t c : stage_channels) {
    p.aligns.push_back({Tensor::zeros({mem_channels, c, 1}),
                        Tensor::zeros({mem_channels, 1, 1})});
  }
  const std::size_t n_mixers = shared_mixer ? 1 : stage_channels.size();
  for (std::size_t i = 0; i < n_mixers; ++i) {
    p.mixers.push_back({Tensor::zeros({mem_channels, mem_channels, 1}),
                        Tensor::zeros({mem_channels, 1, 1})});
  }
  p.head = {Tensor::zeros({n_classes, mem_channels, 1}),
            Tensor::zeros({n_classes, 1, 1})};
  return p;
}

FuseParams FuseParams::random(const std::vector<std::size_t>& stage_channels,
                              std::size_t n_classes, std::size_t mem_channels,
                              diffarray::Activation act, std::uint64_t seed,
                              double scale, bool shared_mixer) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  const auto fill = [&](Shape shape) {
    std::vector<double> v(shape.total());
    for (double& x : v) x = u(rng);
    return Tensor(shape, std::move(v));
  };
  FuseParams p = zeros(stage_channels, n_classes, mem_channels, act,
                       shared_mixer);
  for (auto& a : p.aligns) a.weight = fill(a.weight.shape());
  for (auto& f : p.mixers) f.weight = fill(f.weight.shape());
  p.head.weight = fill(p.head.weight.shape());
  return p;
}

FuseParams FuseParams::bound_to(diffarray::GradTape& tape) const {
  FuseParams out = *this;
  for (auto& [role, t] : out.named()) {
    (void)role;
    *t = tape.leaf(*t);
  }
  return out;
}

std::vector<std::pair<std::string, Tensor*>> FuseParams::named() {
  std::vector<std::pair<std::string, Tensor*>> out;
  for (std::size_t i = 0; i < aligns.size(); ++i) {
    const std::string base = "g" + std::to_string(i + 1);
    out.emplace_back(base + ".weight", &aligns[i].weight);
    out.emplace_back(base + ".bias", &aligns[i].bias);
  }
  for (std::size_t i = 0; i < mixers.size(); ++i) {
    const std::string base =
        shared_mixer() ? std::string("f") : "f" + std::to_string(i + 1);
    out.emplace_back(base + ".weight", &mixers[i].weight);
    out.emplace_back(base + ".bias", &mixers[i].bias);
  }
  out.emplace_back("head.weight", &head.weight);
  out.emplace_back("head.bias", &head.bias);
  return out;
}

std::vector<std::pair<std::string, const Tensor*>> FuseParams::named() const {
  std::vector<std::pair<std::string, const Tensor*>> out;
  for (auto& [role, t] : const_cast<FuseParams*>(this)->named()) {
    out.emplace_back(role, t);
  }
  return out;
}

}  // namespace lmfuse::fusecore
