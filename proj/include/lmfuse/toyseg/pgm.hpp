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

#ifndef LMFUSE_TOYSEG_PGM_HPP_
#define LMFUSE_TOYSEG_PGM_HPP_

#include <string>
#include <vector>

#include "lmfuse/toyseg/dataset.hpp"

namespace lmfuse::toyseg {

// Binary PGM (P5, maxval 255). Values are clamped to [0,1] and quantized to
// a byte; optional `# ...` comment lines are written into the header.
void save_pgm(const std::string& path, const Tensor& image,
              const std::vector<std::string>& comments = {});
Tensor load_pgm(const std::string& path);

// img_%04d.pgm / mask_%04d.pgm pairs in a directory; every header carries
// the generator seed as a comment.
void save_dataset(const std::string& dir, const std::vector<Sample>& samples,
                  std::uint64_t seed);
std::vector<Sample> load_dataset(const std::string& dir);

}  // namespace lmfuse::toyseg

#endif  // LMFUSE_TOYSEG_PGM_HPP_
