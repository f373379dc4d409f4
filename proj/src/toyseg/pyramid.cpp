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

#include "lmfuse/toyseg/pyramid.hpp"

#include <algorithm>

#include "lmfuse/errors.hpp"

namespace lmfuse::toyseg {

using diffarray::Tensor;

namespace {

std::size_t clamp_idx(long v, std::size_t n) {
  return static_cast<std::size_t>(
      std::clamp<long>(v, 0, static_cast<long>(n) - 1));
}

}  // namespace

std::vector<fusecore::StageInput> make_pyramid(const Tensor& image,
                                               std::size_t stages) {
  if (image.shape().c != 1) {
    throw DimensionError("make_pyramid: expected a single-channel image");
  }
  if (stages < 1) throw ConfigError("make_pyramid: need at least one stage");
  const std::size_t h = image.shape().h;
  const std::size_t w = image.shape().w;
  const std::size_t top_factor = std::size_t{1} << (stages - 1);
  if (h % top_factor != 0 || w % top_factor != 0) {
    throw ConfigError("make_pyramid: image sides must be divisible by 2^(L-1)");
  }

  // Full-resolution feature planes with replicated borders.
  const auto at = [&](long y, long x) {
    return image.at(0, clamp_idx(y, h), clamp_idx(x, w));
  };
  std::vector<double> feats(kPyramidChannels * h * w);
  const std::size_t plane = h * w;
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const long ly = static_cast<long>(y), lx = static_cast<long>(x);
      const double hgrad = 0.5 * (at(ly, lx + 1) - at(ly, lx - 1));
      const double vgrad = 0.5 * (at(ly + 1, lx) - at(ly - 1, lx));
      double box = 0.0;
      for (long dy = -1; dy <= 1; ++dy) {
        for (long dx = -1; dx <= 1; ++dx) box += at(ly + dy, lx + dx);
      }
      feats[0 * plane + y * w + x] = at(ly, lx);
      feats[1 * plane + y * w + x] = hgrad;
      feats[2 * plane + y * w + x] = vgrad;
      feats[3 * plane + y * w + x] = box / 9.0;
    }
  }

  std::vector<fusecore::StageInput> out;
  for (std::size_t i = 1; i <= stages; ++i) {
    const std::size_t factor = std::size_t{1} << (stages - i);
    const std::size_t sh = h / factor, sw = w / factor;
    std::vector<double> pooled(kPyramidChannels * sh * sw, 0.0);
    for (std::size_t c = 0; c < kPyramidChannels; ++c) {
      for (std::size_t y = 0; y < sh; ++y) {
        for (std::size_t x = 0; x < sw; ++x) {
          double acc = 0.0;
          for (std::size_t dy = 0; dy < factor; ++dy) {
            for (std::size_t dx = 0; dx < factor; ++dx) {
              acc += feats[c * plane + (y * factor + dy) * w + (x * factor + dx)];
            }
          }
          pooled[(c * sh + y) * sw + x] = acc / (factor * factor);
        }
      }
    }
    out.push_back({i, Tensor({kPyramidChannels, sh, sw}, std::move(pooled))});
  }
  return out;
}

}  // namespace lmfuse::toyseg
