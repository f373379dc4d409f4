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

#include "lmfuse/toyseg/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lmfuse/errors.hpp"

namespace lmfuse::toyseg {

namespace {

struct ShapeSpec {
  bool ellipse = true;
  double cx = 0.0, cy = 0.0;   // center, pixel units
  double rx = 1.0, ry = 1.0;   // radii / half extents
  double intensity = 0.8;
};

// Signed distance in roughly pixel units; negative inside.
double signed_distance(const ShapeSpec& s, double x, double y) {
  if (s.ellipse) {
    const double q = std::sqrt(((x - s.cx) / s.rx) * ((x - s.cx) / s.rx) +
                               ((y - s.cy) / s.ry) * ((y - s.cy) / s.ry));
    return (q - 1.0) * std::min(s.rx, s.ry);
  }
  return std::max(std::abs(x - s.cx) - s.rx, std::abs(y - s.cy) - s.ry);
}

}  // namespace

std::vector<Sample> synth_dataset(std::size_t n, std::size_t height,
                                  std::size_t width, std::uint64_t seed) {
  if (height < 16 || width < 16) {
    throw ConfigError("synth_dataset: image sides must be at least 16");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> shape_count(1, 3);

  const double min_side = static_cast<double>(std::min(height, width));
  std::vector<Sample> out;
  out.reserve(n);

  for (std::size_t s = 0; s < n; ++s) {
    const double bg = 0.08 + 0.17 * unit(rng);
    const int shapes = shape_count(rng);
    std::vector<ShapeSpec> specs;
    for (int k = 0; k < shapes; ++k) {
      ShapeSpec spec;
      spec.ellipse = unit(rng) < 0.5;
      spec.cx = (0.25 + 0.5 * unit(rng)) * width;
      spec.cy = (0.25 + 0.5 * unit(rng)) * height;
      spec.rx = (0.10 + 0.16 * unit(rng)) * min_side;
      spec.ry = (0.10 + 0.16 * unit(rng)) * min_side;
      spec.intensity = 0.55 + 0.40 * unit(rng);
      specs.push_back(spec);
    }

    std::vector<double> img(height * width);
    std::vector<double> mask(height * width, 0.0);
    for (std::size_t py = 0; py < height; ++py) {
      for (std::size_t px = 0; px < width; ++px) {
        const double x = px + 0.5, y = py + 0.5;
        double value = bg + 0.08 * (unit(rng) - 0.5);
        bool inside = false;
        for (const ShapeSpec& spec : specs) {
          const double d = signed_distance(spec, x, y);
          const double coverage = std::clamp(0.5 - d, 0.0, 1.0);
          value = std::max(value, coverage * spec.intensity);
          inside = inside || d < 0.0;
        }
        img[py * width + px] = std::clamp(value, 0.0, 1.0);
        if (inside) mask[py * width + px] = 1.0;
      }
    }
    out.push_back({Tensor({1, height, width}, std::move(img)),
                   Tensor({1, height, width}, std::move(mask))});
  }
  return out;
}

double mean_mask_coverage(const std::vector<Sample>& samples) {
  if (samples.empty()) return 0.0;
  double total = 0.0;
  for (const Sample& s : samples) {
    double set = 0.0;
    for (double v : s.mask.data()) set += v;
    total += set / s.mask.size();
  }
  return total / samples.size();
}

}  // namespace lmfuse::toyseg
