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

#include "lmfuse/diffarray/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

namespace lmfuse::diffarray {

namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) {
      r = (r << 8) | ((v >> (8 * i)) & 0xff);
    }
    return r;
  }
}

}  // namespace

void save_tensor(const std::string& path, const Tensor& t) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "FTNSR v1\n";
  out << "dtype=f64 shape=" << t.shape().c << "," << t.shape().h << ","
      << t.shape().w << "\n";
  for (double v : t.data()) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    bits = to_le(bits);
    out.write(reinterpret_cast<const char*>(&bits), sizeof bits);
  }
  if (!out) throw IoError("short write: " + path);
}

Tensor load_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string magic, header;
  if (!std::getline(in, magic) || magic != "FTNSR v1") {
    throw IoError(path + ": not an FTNSR v1 file");
  }
  if (!std::getline(in, header)) throw IoError(path + ": truncated header");

  Shape shape;
  if (std::sscanf(header.c_str(), "dtype=f64 shape=%zu,%zu,%zu", &shape.c,
                  &shape.h, &shape.w) != 3) {
    throw IoError(path + ": bad header line: " + header);
  }
  std::vector<double> values(shape.total());
  for (double& v : values) {
    std::uint64_t bits;
    if (!in.read(reinterpret_cast<char*>(&bits), sizeof bits)) {
      throw IoError(path + ": truncated payload");
    }
    bits = to_le(bits);
    std::memcpy(&v, &bits, sizeof v);
  }
  return Tensor(shape, std::move(values));
}

}  // namespace lmfuse::diffarray
