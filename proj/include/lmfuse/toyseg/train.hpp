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

#ifndef LMFUSE_TOYSEG_TRAIN_HPP_
#define LMFUSE_TOYSEG_TRAIN_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "lmfuse/fusecore/schedule.hpp"
#include "lmfuse/toyseg/dataset.hpp"

namespace lmfuse::toyseg {

struct TrainConfig {
  std::size_t stages = 4;  // L
  std::size_t height = 32;
  std::size_t width = 32;
  std::size_t n_train = 64;
  std::size_t n_val = 16;
  std::uint64_t seed = 1;
  double learning_rate = 1.0;
  std::size_t epochs = 200;
  std::size_t mem_multiplier = 2;  // memory channels = multiplier * classes
  int max_order = 4;

  void validate() const;
};

struct EpochStats {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double val_dice = 0.0;
};

struct TrainResult {
  std::vector<EpochStats> history;
  double final_val_dice = 0.0;
  fusecore::FuseParams params;
};

// Full-batch gradient descent on BCE + soft Dice over the fusion
// parameters, against a fixed feature pyramid encoder. Deterministic in
// (seed, config). Throws TrainingFailureError naming the epoch if the loss
// leaves the finite range.
TrainResult train(const TrainConfig& config);

// Validation Dice (threshold at logit 0) of given parameters on a dataset.
double evaluate(const fusecore::FuseParams& params,
                const std::vector<Sample>& samples, int max_order = 4);

// `# seed = ...` comment, then epoch,train_loss,val_dice rows.
void write_metrics_csv(const TrainResult& result, const TrainConfig& config,
                       std::ostream& out);

// Central-difference check of the full pipeline (pyramid -> scheduler ->
// head -> BCE + Dice) on a tiny instance: 4 stages, 1 class, 8x8 input.
struct GradCheckReport {
  std::vector<std::pair<std::string, double>> per_tensor;  // role, rel. err
  double max_rel_err = 0.0;
  bool pass(double tol = 1e-4) const { return max_rel_err <= tol; }
  std::string text() const;
};
GradCheckReport gradcheck(std::uint64_t seed = 1);

// Trains every order cap over several seeds and reports the mean validation
// Dice per cap. Directional evidence, not a hard gate.
struct AblationReport {
  struct Entry {
    int max_order = 0;
    std::uint64_t seed = 0;
    double val_dice = 0.0;
  };
  std::vector<Entry> entries;
  double mean_dice(int max_order) const;
  std::string text() const;
};
AblationReport order_cap_ablation(const TrainConfig& base,
                                  const std::vector<std::uint64_t>& seeds);

}  // namespace lmfuse::toyseg

#endif  // LMFUSE_TOYSEG_TRAIN_HPP_
