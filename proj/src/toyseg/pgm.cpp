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

#include "lmfuse/toyseg/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lmfuse/toyseg/metrics.hpp"

namespace lmfuse::toyseg {

namespace fs = std::filesystem;

void save_pgm(const std::string& path, const Tensor& image,
              const std::vector<std::string>& comments) {
  if (image.shape().c != 1) {
    throw DimensionError("save_pgm: expected a single-channel tensor");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "P5\n";
  for (const std::string& c : comments) out << "# " << c << "\n";
  out << image.shape().w << " " << image.shape().h << "\n255\n";
  for (double v : image.data()) {
    const double clamped = std::clamp(v, 0.0, 1.0);
    out.put(static_cast<char>(
        static_cast<unsigned char>(std::lround(clamped * 255.0))));
  }
  if (!out) throw IoError("short write: " + path);
}

namespace {

// Next whitespace-delimited token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(c);
  }
  return tok;
}

}  // namespace

Tensor load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  if (next_token(in) != "P5") throw IoError(path + ": not a P5 PGM");
  const std::string ws = next_token(in);
  const std::string hs = next_token(in);
  const std::string ms = next_token(in);
  if (ws.empty() || hs.empty() || ms != "255") {
    throw IoError(path + ": unsupported PGM header");
  }
  const std::size_t w = std::stoul(ws);
  const std::size_t h = std::stoul(hs);
  std::vector<double> values(h * w);
  for (double& v : values) {
    char byte;
    if (!in.get(byte)) throw IoError(path + ": truncated pixel data");
    v = static_cast<unsigned char>(byte) / 255.0;
  }
  return Tensor({1, h, w}, std::move(values));
}

void save_dataset(const std::string& dir, const std::vector<Sample>& samples,
                  std::uint64_t seed) {
  fs::create_directories(dir);
  const std::vector<std::string> meta{"seed = " + std::to_string(seed)};
  char name[32];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    std::snprintf(name, sizeof name, "img_%04zu.pgm", i);
    save_pgm((fs::path(dir) / name).string(), samples[i].image, meta);
    std::snprintf(name, sizeof name, "mask_%04zu.pgm", i);
    save_pgm((fs::path(dir) / name).string(), samples[i].mask, meta);
  }
}

std::vector<Sample> load_dataset(const std::string& dir) {
  std::vector<Sample> out;
  char name[32];
  for (std::size_t i = 0;; ++i) {
    std::snprintf(name, sizeof name, "img_%04zu.pgm", i);
    const fs::path img = fs::path(dir) / name;
    std::snprintf(name, sizeof name, "mask_%04zu.pgm", i);
    const fs::path mask = fs::path(dir) / name;
    if (!fs::exists(img)) break;
    if (!fs::exists(mask)) {
      throw IoError("dataset: " + img.string() + " has no mask file");
    }
    out.push_back({load_pgm(img.string()),
                   binarize(load_pgm(mask.string()), 0.5)});
  }
  if (out.empty()) throw IoError("dataset: no img_0000.pgm under " + dir);
  return out;
}

}  // namespace lmfuse::toyseg
