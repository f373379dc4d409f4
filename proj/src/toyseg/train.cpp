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

#include "lmfuse/toyseg/train.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "lmfuse/toyseg/losses.hpp"
#include "lmfuse/toyseg/metrics.hpp"
#include "lmfuse/toyseg/pyramid.hpp"

namespace lmfuse::toyseg {

using diffarray::Activation;
using diffarray::GradTape;
using diffarray::Tensor;
using fusecore::FuseParams;
using fusecore::StageInput;

namespace {

constexpr Activation kMixerActivation = Activation::kTanh;
constexpr double kInitScale = 0.3;

FuseParams initial_params(const TrainConfig& cfg) {
  const std::vector<std::size_t> chans(cfg.stages, kPyramidChannels);
  return FuseParams::random(chans, /*n_classes=*/1,
                            cfg.mem_multiplier * 1, kMixerActivation,
                            cfg.seed ^ 0x9e3779b97f4a7c15ull, kInitScale);
}

Tensor forward_logits(const FuseParams& params,
                      const std::vector<StageInput>& stages, int max_order) {
  const auto fused = fusecore::fuse_forward_order_capped(params, stages,
                                                         max_order);
  return fusecore::head(params, fused.y_final);
}

}  // namespace

void TrainConfig::validate() const {
  if (stages < 2) throw ConfigError("TrainConfig: stages must be >= 2");
  if (n_train == 0 || n_val == 0 || epochs == 0) {
    throw ConfigError("TrainConfig: counts must be positive");
  }
  if (max_order < 1 || max_order > 4) {
    throw ConfigError("TrainConfig: max_order must be in 1..4");
  }
  if (mem_multiplier < 1 || mem_multiplier > 4) {
    throw ConfigError("TrainConfig: mem_channels must be one of N,2N,3N,4N");
  }
  if (!(learning_rate >= 0.0)) {
    throw ConfigError("TrainConfig: learning rate must be non-negative");
  }
}

double evaluate(const FuseParams& params, const std::vector<Sample>& samples,
                int max_order) {
  double total = 0.0;
  for (const Sample& s : samples) {
    const auto stages = make_pyramid(s.image, params.stages());
    const Tensor logits = forward_logits(params, stages, max_order);
    total += dice_score(binarize(logits, 0.0), s.mask);
  }
  return samples.empty() ? 0.0 : total / samples.size();
}

TrainResult train(const TrainConfig& cfg) {
  cfg.validate();

  const auto all = synth_dataset(cfg.n_train + cfg.n_val, cfg.height,
                                 cfg.width, cfg.seed);
  const std::vector<Sample> train_set(all.begin(), all.begin() + cfg.n_train);
  const std::vector<Sample> val_set(all.begin() + cfg.n_train, all.end());

  std::vector<std::vector<StageInput>> pyramids;
  pyramids.reserve(train_set.size());
  for (const Sample& s : train_set) {
    pyramids.push_back(make_pyramid(s.image, cfg.stages));
  }

  FuseParams params = initial_params(cfg);
  TrainResult result{{}, 0.0, params};

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::map<std::string, std::vector<double>> grad_accum;
    double loss_total = 0.0;

    for (std::size_t i = 0; i < train_set.size(); ++i) {
      GradTape tape;
      FuseParams bound = params.bound_to(tape);
      const Tensor logits = forward_logits(bound, pyramids[i], cfg.max_order);
      const Tensor loss = segmentation_loss(logits, train_set[i].mask);
      const double loss_val = loss.scalar();
      if (!std::isfinite(loss_val)) {
        throw TrainingFailureError("training diverged at epoch " +
                                   std::to_string(epoch));
      }
      loss_total += loss_val;
      const auto grads = tape.backward(loss);
      for (const auto& [role, tensor] : bound.named()) {
        const Tensor g = grads.at(*tensor);
        auto& acc = grad_accum[role];
        if (acc.empty()) acc.assign(g.size(), 0.0);
        for (std::size_t j = 0; j < g.size(); ++j) acc[j] += g.data()[j];
      }
    }

    const double scale = cfg.learning_rate / train_set.size();
    for (auto& [role, tensor] : params.named()) {
      const auto& acc = grad_accum.at(role);
      std::vector<double> next(tensor->data().begin(), tensor->data().end());
      for (std::size_t j = 0; j < next.size(); ++j) next[j] -= scale * acc[j];
      *tensor = Tensor(tensor->shape(), std::move(next));
    }

    result.history.push_back({epoch, loss_total / train_set.size(),
                              evaluate(params, val_set, cfg.max_order)});
  }

  result.params = params;
  result.final_val_dice = result.history.back().val_dice;
  return result;
}

void write_metrics_csv(const TrainResult& result, const TrainConfig& cfg,
                       std::ostream& out) {
  out << "# seed = " << cfg.seed << "\n";
  out << "epoch,train_loss,val_dice\n";
  for (const EpochStats& e : result.history) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%zu,%.8e,%.6f\n", e.epoch, e.train_loss,
                  e.val_dice);
    out << buf;
  }
}

GradCheckReport gradcheck(std::uint64_t seed) {
  // Tiny full pipeline: 4 stages, 1 class, 8x8 image.
  const std::size_t side = 8;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> img(side * side);
  std::vector<double> mask(side * side);
  for (std::size_t i = 0; i < img.size(); ++i) {
    img[i] = unit(rng);
    mask[i] = unit(rng) < 0.35 ? 1.0 : 0.0;
  }
  const Tensor image({1, side, side}, std::move(img));
  const Tensor target({1, side, side}, std::move(mask));
  const auto stages = make_pyramid(image, 4);

  const std::vector<std::size_t> chans(4, kPyramidChannels);
  FuseParams base = FuseParams::random(chans, 1, 2, kMixerActivation,
                                       seed + 1, kInitScale);

  const auto loss_of = [&](const FuseParams& p) {
    return segmentation_loss(forward_logits(p, stages, 4), target);
  };

  GradTape tape;
  FuseParams bound = base.bound_to(tape);
  const auto grads = tape.backward(loss_of(bound));

  GradCheckReport report;
  for (const auto& [role, tensor] : bound.named()) {
    const Tensor autograd = grads.at(*tensor);
    FuseParams probe = base;
    Tensor* slot = nullptr;
    for (auto& [r, t] : probe.named()) {
      if (r == role) slot = t;
    }
    const Tensor numeric = diffarray::finite_diff_grad(
        [&](const Tensor& t) {
          *slot = t;
          return loss_of(probe).scalar();
        },
        *slot, 1e-5);
    double worst = 0.0;
    for (std::size_t i = 0; i < autograd.size(); ++i) {
      const double a = autograd.data()[i], n = numeric.data()[i];
      worst = std::max(
          worst, std::abs(a - n) / std::max({std::abs(a), std::abs(n), 1e-6}));
    }
    report.per_tensor.emplace_back(role, worst);
    report.max_rel_err = std::max(report.max_rel_err, worst);
  }
  return report;
}

std::string GradCheckReport::text() const {
  std::ostringstream out;
  for (const auto& [role, err] : per_tensor) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-12s rel_err=%.3e\n", role.c_str(), err);
    out << buf;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max rel_err=%.3e\n", max_rel_err);
  out << buf;
  return out.str();
}

AblationReport order_cap_ablation(const TrainConfig& base,
                                  const std::vector<std::uint64_t>& seeds) {
  AblationReport report;
  for (int cap = 1; cap <= 4; ++cap) {
    for (std::uint64_t seed : seeds) {
      TrainConfig cfg = base;
      cfg.max_order = cap;
      cfg.seed = seed;
      const TrainResult r = train(cfg);
      report.entries.push_back({cap, seed, r.final_val_dice});
    }
  }
  return report;
}

double AblationReport::mean_dice(int max_order) const {
  double total = 0.0;
  std::size_t count = 0;
  for (const Entry& e : entries) {
    if (e.max_order == max_order) {
      total += e.val_dice;
      ++count;
    }
  }
  return count == 0 ? 0.0 : total / count;
}

std::string AblationReport::text() const {
  std::ostringstream out;
  for (const Entry& e : entries) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "max_order=%d seed=%llu val_dice=%.6f\n",
                  e.max_order, static_cast<unsigned long long>(e.seed),
                  e.val_dice);
    out << buf;
  }
  for (int cap = 1; cap <= 4; ++cap) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "mean max_order=%d dice=%.6f\n", cap,
                  mean_dice(cap));
    out << buf;
  }
  return out.str();
}

}  // namespace lmfuse::toyseg
