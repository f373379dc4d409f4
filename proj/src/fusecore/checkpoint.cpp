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

#include "lmfuse/fusecore/checkpoint.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "lmfuse/diffarray/io.hpp"

namespace lmfuse::fusecore {

namespace fs = std::filesystem;

namespace {

std::string role_filename(const std::string& role) {
  std::string name = role;
  std::replace(name.begin(), name.end(), '.', '_');
  return name + ".ftnsr";
}

}  // namespace

void save_params(const std::string& dir, const FuseParams& params) {
  params.validate();
  fs::create_directories(dir);
  std::ofstream manifest(fs::path(dir) / "manifest.txt");
  if (!manifest) throw IoError("cannot write manifest in " + dir);
  manifest << "lmfuse-params v1\n";
  manifest << "classes = " << params.n_classes << "\n";
  manifest << "mem_channels = " << params.mem_channels << "\n";
  manifest << "activation = " << diffarray::activation_name(params.activation)
           << "\n";
  for (const auto& [role, tensor] : params.named()) {
    const std::string file = role_filename(role);
    diffarray::save_tensor((fs::path(dir) / file).string(), *tensor);
    manifest << role << " = " << file << "\n";
  }
  if (!manifest) throw IoError("short manifest write in " + dir);
}

FuseParams load_params(const std::string& dir) {
  std::ifstream manifest(fs::path(dir) / "manifest.txt");
  if (!manifest) throw IoError("cannot open manifest in " + dir);
  std::string line;
  if (!std::getline(manifest, line) || line != "lmfuse-params v1") {
    throw IoError(dir + ": not a lmfuse-params v1 checkpoint");
  }

  std::map<std::string, std::string> kv;
  std::vector<std::string> roles;  // manifest order
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw IoError(dir + ": bad manifest line: " + line);
    const std::string key = line.substr(0, eq);
    kv[key] = line.substr(eq + 3);
    if (key.find('.') != std::string::npos) roles.push_back(key);
  }

  std::map<std::string, Tensor> tensors;
  for (const std::string& role : roles) {
    tensors[role] =
        diffarray::load_tensor((fs::path(dir) / kv.at(role)).string());
  }

  FuseParams p;
  p.n_classes = std::stoul(kv.at("classes"));
  p.mem_channels = std::stoul(kv.at("mem_channels"));
  p.activation = diffarray::activation_from_string(kv.at("activation"));

  for (std::size_t i = 1; tensors.count("g" + std::to_string(i) + ".weight");
       ++i) {
    const std::string base = "g" + std::to_string(i);
    p.aligns.push_back({tensors.at(base + ".weight"), tensors.at(base + ".bias")});
  }
  if (tensors.count("f.weight")) {
    p.mixers.push_back({tensors.at("f.weight"), tensors.at("f.bias")});
  } else {
    for (std::size_t i = 1; tensors.count("f" + std::to_string(i) + ".weight");
         ++i) {
      const std::string base = "f" + std::to_string(i);
      p.mixers.push_back(
          {tensors.at(base + ".weight"), tensors.at(base + ".bias")});
    }
  }
  p.head = {tensors.at("head.weight"), tensors.at("head.bias")};
  p.validate();
  return p;
}

}  // namespace lmfuse::fusecore
