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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "lmfuse/fusecore/checkpoint.hpp"
#include "lmfuse/fusecore/schedule.hpp"

using namespace lmfuse;
using namespace lmfuse::fusecore;
using diffarray::Activation;
using diffarray::GradTape;
using diffarray::Shape;
using multistep::Rational;

namespace {

Tensor random_tensor(Shape shape, std::mt19937_64& rng, double lo = -1.0,
                     double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(shape.total());
  for (double& x : v) x = u(rng);
  return Tensor(shape, std::move(v));
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  REQUIRE(a.shape() == b.shape());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  }
  return m;
}

// Stage pyramid with doubling spatial sizes and fixed channel count.
std::vector<StageInput> random_stages(std::size_t count, std::size_t channels,
                                      std::mt19937_64& rng) {
  std::vector<StageInput> stages;
  std::size_t side = 2;
  for (std::size_t i = 1; i <= count; ++i) {
    stages.push_back({i, random_tensor({channels, side, side}, rng)});
    if (side < 16) side *= 2;
  }
  return stages;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("g_align: identity resize, zero params, composition oracle") {
  std::mt19937_64 rng(101);
  const std::size_t mem = 4;
  FuseParams params = FuseParams::random({3, 3}, 2, mem, Activation::kRelu, 5);

  // Already at target resolution: only the channel projection acts.
  const StageInput s2{2, random_tensor({3, 8, 8}, rng)};
  const Tensor aligned = g_align(params, s2, 8, 8);
  const Tensor direct = diffarray::channel_project(
      s2.x, params.aligns[1].weight, params.aligns[1].bias);
  CHECK(max_abs_diff(aligned, direct) == 0.0);

  // Zero parameters wipe the features.
  FuseParams zero = FuseParams::zeros({3, 3}, 2, mem, Activation::kRelu);
  for (double v : g_align(zero, s2, 8, 8)) CHECK(v == 0.0);

  // Resize-then-project oracle.
  const StageInput s1{1, random_tensor({3, 4, 4}, rng)};
  const Tensor got = g_align(params, s1, 8, 8);
  const Tensor expect = diffarray::channel_project(
      diffarray::resize_bilinear(s1.x, 8, 8), params.aligns[0].weight,
      params.aligns[0].bias);
  CHECK(max_abs_diff(got, expect) < 1e-14);
  CHECK(got.shape() == Shape{mem, 8, 8});
}

TEST_CASE("rhs_eval: zero dynamics and bias-only mixer") {
  const std::size_t mem = 2;
  FuseParams zero = FuseParams::zeros({3}, 1, mem, Activation::kRelu);
  std::mt19937_64 rng(7);
  const StageInput s{1, random_tensor({3, 4, 4}, rng)};
  const Tensor y0 = Tensor::zeros({mem, 4, 4});
  for (double v : rhs_eval(zero, s, y0)) CHECK(v == 0.0);

  // Zero mixer weight, bias b, identity activation: F = -y + b broadcast.
  FuseParams biased = FuseParams::zeros({3}, 1, mem, Activation::kIdentity);
  biased.mixers[0].bias = Tensor({mem, 1, 1}, {0.5, -1.25});
  const Tensor y = random_tensor({mem, 4, 4}, rng);
  const Tensor f = rhs_eval(biased, s, y);
  for (std::size_t c = 0; c < mem; ++c) {
    for (std::size_t h = 0; h < 4; ++h) {
      for (std::size_t w = 0; w < 4; ++w) {
        const double expect = -y.at(c, h, w) + biased.mixers[0].bias.at(c, 0, 0);
        CHECK(std::abs(f.at(c, h, w) - expect) < 1e-15);
      }
    }
  }
}

TEST_CASE("rhs_eval matches the hand-composed op chain") {
  std::mt19937_64 rng(11);
  const std::size_t mem = 4;
  FuseParams params =
      FuseParams::random({5, 5, 5}, 2, mem, Activation::kTanh, 31);
  params.mixers[0].bias = random_tensor({mem, 1, 1}, rng);
  const StageInput s{2, random_tensor({5, 4, 4}, rng)};
  const Tensor y = random_tensor({mem, 8, 8}, rng);

  const Tensor got = rhs_eval(params, s, y);

  const Tensor g = diffarray::channel_project(
      diffarray::resize_bilinear(s.x, 8, 8), params.aligns[1].weight,
      params.aligns[1].bias);
  const Tensor u =
      diffarray::weighted_sum(std::vector<double>{1.0, 1.0}, {y, g});
  const Tensor v = diffarray::channel_project(u, params.mixers[0].weight,
                                              params.mixers[0].bias);
  const Tensor a = diffarray::pointwise(v, Activation::kTanh);
  const Tensor expect =
      diffarray::weighted_sum(std::vector<double>{-1.0, 1.0}, {y, a});
  CHECK(max_abs_diff(got, expect) < 1e-14);
}

TEST_CASE("plan_schedule rejects bad configurations") {
  CHECK_THROWS_AS(plan_schedule(1), ConfigError);
  CHECK_THROWS_AS(plan_schedule(0), ConfigError);
  CHECK_THROWS_AS(plan_schedule(6, 0), ConfigError);
  CHECK_THROWS_AS(plan_schedule(6, 5), ConfigError);
}

TEST_CASE("plan_schedule texts match the hand-transcribed golden traces") {
  for (std::size_t L : {2u, 3u, 4u, 5u, 6u, 8u}) {
    const std::string golden = read_file(std::string(LMFUSE_GOLDEN_DIR) +
                                         "/trace_L" + std::to_string(L) +
                                         ".txt");
    CHECK(plan_schedule(L).text() == golden);
  }
}

TEST_CASE("L=5 plan matches the hand-transcribed scheme ladder row for row") {
  // Hand-transcribed expectation: four predictor-corrector pairs and an
  // explicit final step, with these exact coefficient vectors.
  const auto plan = plan_schedule(5);
  REQUIRE(plan.entries.size() == 5);
  CHECK(plan.delta == Rational(1, 5));

  const auto check_row = [&](std::size_t idx, const std::string& pred,
                             const std::string& corr,
                             const std::vector<Rational>& pred_b, long plo,
                             long phi, const std::vector<Rational>& corr_b,
                             long clo, long chi) {
    const TraceEntry& e = plan.entries[idx];
    CHECK(e.pred == pred);
    CHECK(e.corr == corr);
    CHECK(e.pred_lo == plo);
    CHECK(e.pred_hi == phi);
    REQUIRE(e.pred_b.size() == pred_b.size());
    for (std::size_t j = 0; j < pred_b.size(); ++j)
      CHECK(e.pred_b[j] == pred_b[j]);
    if (corr != "none") {
      CHECK(e.corr_lo == clo);
      CHECK(e.corr_hi == chi);
      REQUIRE(e.corr_b.size() == corr_b.size());
      for (std::size_t j = 0; j < corr_b.size(); ++j)
        CHECK(e.corr_b[j] == corr_b[j]);
    }
  };

  // Y2 = Y1 + d*F1          then  Y2 = Y1 + d/2 (F1 + F2)
  check_row(0, "AB1", "AM1", {{1, 1}}, 1, 1, {{1, 2}, {1, 2}}, 1, 2);
  // Y3 = Y2 + d/2 (3F2-F1)  then  Y3 = Y2 + d/12 (5F3+8F2-F1)
  check_row(1, "AB2", "AM2", {{-1, 2}, {3, 2}}, 1, 2,
            {{-1, 12}, {8, 12}, {5, 12}}, 1, 3);
  // Y4 = Y3 + d/12 (23F3-16F2+5F1) then Y4 = Y3 + d/24 (9F4+19F3-5F2+F1)
  check_row(2, "AB3", "AM3", {{5, 12}, {-16, 12}, {23, 12}}, 1, 3,
            {{1, 24}, {-5, 24}, {19, 24}, {9, 24}}, 1, 4);
  // Y5 = Y4 + d/24 (55F4-59F3+37F2-9F1) then Y5 = Y4 + d/24 (9F5+19F4-5F3+F2)
  check_row(3, "AB4", "AM3", {{-9, 24}, {37, 24}, {-59, 24}, {55, 24}}, 1, 4,
            {{1, 24}, {-5, 24}, {19, 24}, {9, 24}}, 2, 5);
  // Y6 = Y5 + d/24 (55F5-59F4+37F3-9F2)
  check_row(4, "AB4", "none", {{-9, 24}, {37, 24}, {-59, 24}, {55, 24}}, 2, 5,
            {}, 0, 0);
}

TEST_CASE("fuse_forward: zero mixer forces a zero final flow") {
  std::mt19937_64 rng(13);
  FuseParams params = FuseParams::zeros({4, 4, 4, 4}, 1, 2, Activation::kRelu);
  // Alignment weights may be anything; f == 0 makes every F_i = -Y_i and
  // Y_1 = 0 pins the whole trajectory at zero.
  for (auto& a : params.aligns) a.weight = random_tensor(a.weight.shape(), rng);
  const auto stages = random_stages(4, 4, rng);
  const auto r = fuse_forward(params, stages);
  for (double v : r.y_final.y) CHECK(v == 0.0);
}

TEST_CASE("fuse_forward: exactly one rhs evaluation per stage, L in 2..8") {
  std::mt19937_64 rng(17);
  for (std::size_t L = 2; L <= 8; ++L) {
    std::vector<std::size_t> chans(L, 3);
    FuseParams params =
        FuseParams::random(chans, 1, 2, Activation::kTanh, 100 + L);
    const auto stages = random_stages(L, 3, rng);
    const auto r = fuse_forward(params, stages);
    CHECK(r.trace.rhs_evals == L);
    CHECK(r.trace.entries.size() == L);
  }
}

TEST_CASE("fuse_forward matches a hand-unrolled L=5 oracle") {
  std::mt19937_64 rng(19);
  const std::size_t mem = 3;
  FuseParams params =
      FuseParams::random({2, 2, 2, 2, 2}, 1, mem, Activation::kIdentity, 77);
  for (auto& a : params.aligns) a.bias = random_tensor({mem, 1, 1}, rng, -0.2, 0.2);
  params.mixers[0].bias = random_tensor({mem, 1, 1}, rng, -0.2, 0.2);
  const auto stages = random_stages(5, 2, rng);
  const std::size_t H = stages.back().x.shape().h;
  const std::size_t W = stages.back().x.shape().w;

  // Oracle: the five-stage update sequence written out with literal
  // fractions and raw loops, independent of the scheduler and weighted_sum.
  const auto lincomb = [&](std::initializer_list<std::pair<double, const Tensor*>> terms) {
    std::vector<double> acc((*terms.begin()).second->size(), 0.0);
    for (const auto& [c, t] : terms) {
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c * t->data()[i];
    }
    return Tensor({mem, H, W}, std::move(acc));
  };
  const auto F = [&](std::size_t stage_idx, const Tensor& y) {
    return rhs_eval(params, stages[stage_idx - 1], y);
  };
  const double d = 1.0 / 5.0;

  const Tensor y1 = Tensor::zeros({mem, H, W});
  const Tensor f1 = F(1, y1);
  const Tensor y2p = lincomb({{1.0, &y1}, {d, &f1}});
  const Tensor f2 = F(2, y2p);
  const Tensor y2 = lincomb({{1.0, &y1}, {d / 2, &f1}, {d / 2, &f2}});
  const Tensor y3p = lincomb({{1.0, &y2}, {3 * d / 2, &f2}, {-d / 2, &f1}});
  const Tensor f3 = F(3, y3p);
  const Tensor y3 =
      lincomb({{1.0, &y2}, {5 * d / 12, &f3}, {8 * d / 12, &f2}, {-d / 12, &f1}});
  const Tensor y4p = lincomb(
      {{1.0, &y3}, {23 * d / 12, &f3}, {-16 * d / 12, &f2}, {5 * d / 12, &f1}});
  const Tensor f4 = F(4, y4p);
  const Tensor y4 = lincomb({{1.0, &y3},
                             {9 * d / 24, &f4},
                             {19 * d / 24, &f3},
                             {-5 * d / 24, &f2},
                             {d / 24, &f1}});
  const Tensor y5p = lincomb({{1.0, &y4},
                              {55 * d / 24, &f4},
                              {-59 * d / 24, &f3},
                              {37 * d / 24, &f2},
                              {-9 * d / 24, &f1}});
  const Tensor f5 = F(5, y5p);
  const Tensor y5 = lincomb({{1.0, &y4},
                             {9 * d / 24, &f5},
                             {19 * d / 24, &f4},
                             {-5 * d / 24, &f3},
                             {d / 24, &f2}});
  const Tensor y_final = lincomb({{1.0, &y5},
                                  {55 * d / 24, &f5},
                                  {-59 * d / 24, &f4},
                                  {37 * d / 24, &f3},
                                  {-9 * d / 24, &f2}});

  const auto r = fuse_forward(params, stages);
  CHECK(max_abs_diff(r.y_final.y, y_final) < 1e-13);
}

TEST_CASE("fuse_forward rejects bad stage lists") {
  std::mt19937_64 rng(23);
  FuseParams params = FuseParams::random({3, 3}, 1, 2, Activation::kRelu, 1);

  // L < 2.
  FuseParams one = FuseParams::random({3}, 1, 2, Activation::kRelu, 1);
  std::vector<StageInput> single{{1, random_tensor({3, 4, 4}, rng)}};
  CHECK_THROWS_AS(fuse_forward(one, single), ConfigError);

  // Missing / misnumbered stage.
  std::vector<StageInput> wrong{{1, random_tensor({3, 2, 2}, rng)},
                                {3, random_tensor({3, 4, 4}, rng)}};
  CHECK_THROWS_AS(fuse_forward(params, wrong), InputError);

  // Decreasing spatial size.
  std::vector<StageInput> shrink{{1, random_tensor({3, 4, 4}, rng)},
                                 {2, random_tensor({3, 2, 2}, rng)}};
  CHECK_THROWS_AS(fuse_forward(params, shrink), InputError);

  // Channel mismatch with the alignment parameters.
  std::vector<StageInput> badchan{{1, random_tensor({3, 2, 2}, rng)},
                                  {2, random_tensor({5, 4, 4}, rng)}};
  CHECK_THROWS_AS(fuse_forward(params, badchan), DimensionError);
}

TEST_CASE("fuse_forward is linear in the stage inputs when f,g are linear") {
  std::mt19937_64 rng(29);
  const std::size_t L = 5;
  std::vector<std::size_t> chans(L, 3);
  FuseParams params =
      FuseParams::random(chans, 1, 2, Activation::kIdentity, 55);
  // Linear means zero biases (the random factory already zeroes them).

  const auto a_stages = random_stages(L, 3, rng);
  auto b_stages = random_stages(L, 3, rng);
  for (std::size_t i = 0; i < L; ++i) {
    // Same spatial layout for superposition to make sense.
    REQUIRE(a_stages[i].x.shape() == b_stages[i].x.shape());
  }
  const double alpha = 0.7, beta = -1.4;

  std::vector<StageInput> mix_stages;
  for (std::size_t i = 0; i < L; ++i) {
    mix_stages.push_back(
        {i + 1, diffarray::weighted_sum(std::vector<double>{alpha, beta},
                                        {a_stages[i].x, b_stages[i].x})});
  }

  const Tensor ya = fuse_forward(params, a_stages).y_final.y;
  const Tensor yb = fuse_forward(params, b_stages).y_final.y;
  const Tensor ymix = fuse_forward(params, mix_stages).y_final.y;
  const Tensor expect =
      diffarray::weighted_sum(std::vector<double>{alpha, beta}, {ya, yb});
  CHECK(max_abs_diff(ymix, expect) < 1e-10);
}

TEST_CASE("order cap: cap 4 is bitwise identical, cap 1 is live") {
  std::mt19937_64 rng(31);
  const std::size_t L = 6;
  std::vector<std::size_t> chans(L, 3);
  FuseParams params =
      FuseParams::random(chans, 1, 2, Activation::kIdentity, 91);
  const auto stages = random_stages(L, 3, rng);

  const Tensor uncapped = fuse_forward(params, stages).y_final.y;
  const Tensor cap4 = fuse_forward_order_capped(params, stages, 4).y_final.y;
  REQUIRE(cap4.size() == uncapped.size());
  for (std::size_t i = 0; i < cap4.size(); ++i) {
    CHECK(cap4.data()[i] == uncapped.data()[i]);
  }

  const auto r1 = fuse_forward_order_capped(params, stages, 1);
  for (const TraceEntry& e : r1.trace.entries) {
    CHECK(e.pred == "AB1");
    if (e.corr != "none") CHECK(e.corr == "AM1");
  }
  CHECK(max_abs_diff(r1.y_final.y, uncapped) > 0.0);

  // Zero dynamics stays zero under every cap.
  FuseParams zero = FuseParams::zeros(chans, 1, 2, Activation::kRelu);
  for (int cap = 1; cap <= 4; ++cap) {
    const auto rz = fuse_forward_order_capped(zero, stages, cap);
    for (double v : rz.y_final.y) CHECK(v == 0.0);
  }
}

TEST_CASE("fuse_forward is deterministic bit for bit") {
  std::mt19937_64 rng(37);
  const std::size_t L = 4;
  std::vector<std::size_t> chans(L, 3);
  FuseParams params = FuseParams::random(chans, 1, 2, Activation::kTanh, 17);
  const auto stages = random_stages(L, 3, rng);
  const Tensor first = fuse_forward(params, stages).y_final.y;
  const Tensor second = fuse_forward(params, stages).y_final.y;
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first.data()[i] == second.data()[i]);
  }
}

TEST_CASE("trace windows for L >= 5 follow the steady-state pattern") {
  const auto plan = plan_schedule(8);
  for (const TraceEntry& e : plan.entries) {
    if (e.corr == "none") {
      CHECK(e.stage == 8);
      CHECK(e.pred == "AB4");
      CHECK(e.pred_hi - e.pred_lo + 1 == 4);
    } else if (e.stage >= 4) {
      CHECK(e.pred == "AB4");
      CHECK(e.corr == "AM3");
      const long i = static_cast<long>(e.stage);
      CHECK(e.pred_lo == i - 3);
      CHECK(e.pred_hi == i);
      CHECK(e.corr_lo == i - 2);
      CHECK(e.corr_hi == i + 1);
    }
  }
  // Final step uses AB_L exactly when L < 5.
  for (std::size_t L = 2; L <= 4; ++L) {
    CHECK(plan_schedule(L).entries.back().pred == "AB" + std::to_string(L));
  }
  CHECK(plan_schedule(5).entries.back().pred == "AB4");
}

TEST_CASE("head: zero weights, channel selector, projection oracle") {
  std::mt19937_64 rng(41);
  const std::size_t mem = 3;
  FuseParams params = FuseParams::zeros({2, 2}, 2, mem, Activation::kRelu);
  const MemoryFlow flow{random_tensor({mem, 4, 4}, rng)};

  for (double v : head(params, flow)) CHECK(v == 0.0);

  // Selector weight picks out channel 0.
  std::vector<double> sel(2 * mem, 0.0);
  sel[0] = 1.0;
  params.head.weight = Tensor({2, mem, 1}, std::move(sel));
  const Tensor logits = head(params, flow);
  for (std::size_t h = 0; h < 4; ++h) {
    for (std::size_t w = 0; w < 4; ++w) {
      CHECK(logits.at(0, h, w) == flow.y.at(0, h, w));
      CHECK(logits.at(1, h, w) == 0.0);
    }
  }

  params.head.weight = random_tensor({2, mem, 1}, rng);
  params.head.bias = random_tensor({2, 1, 1}, rng);
  const Tensor expect = diffarray::channel_project(flow.y, params.head.weight,
                                                   params.head.bias);
  CHECK(max_abs_diff(head(params, flow), expect) == 0.0);
}

TEST_CASE("fuse_forward + head backward matches finite differences") {
  // Small end-to-end gradient check against the central-difference oracle,
  // parameter tensor by parameter tensor.
  std::mt19937_64 rng(43);
  const std::size_t L = 3;
  std::vector<std::size_t> chans(L, 2);
  FuseParams base = FuseParams::random(chans, 1, 2, Activation::kTanh, 3);
  const auto stages = random_stages(L, 2, rng);

  const auto loss_with = [&](const FuseParams& p) {
    return diffarray::sum(head(p, fuse_forward(p, stages).y_final));
  };

  GradTape tape;
  FuseParams bound = base.bound_to(tape);
  const auto grads = tape.backward(loss_with(bound));

  for (const auto& [role, tensor] : bound.named()) {
    const Tensor autograd = grads.at(*tensor);
    // Finite differences on this one tensor, others fixed.
    FuseParams probe = base;
    Tensor* slot = nullptr;
    for (auto& [r2, t2] : probe.named()) {
      if (r2 == role) slot = t2;
    }
    REQUIRE(slot != nullptr);
    const Tensor numeric = diffarray::finite_diff_grad(
        [&](const Tensor& t) {
          *slot = t;
          return loss_with(probe).scalar();
        },
        *slot, 1e-5);
    CAPTURE(role);
    double worst = 0.0;
    for (std::size_t i = 0; i < autograd.size(); ++i) {
      const double a = autograd.data()[i], n = numeric.data()[i];
      worst = std::max(worst,
                       std::abs(a - n) / std::max({std::abs(a), std::abs(n),
                                                   1e-6}));
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("per-stage mixers are selectable and checkpointable") {
  std::mt19937_64 rng(53);
  const std::size_t L = 3;
  std::vector<std::size_t> chans(L, 2);
  FuseParams per_stage = FuseParams::random(chans, 1, 2, Activation::kTanh,
                                            61, 0.3, /*shared_mixer=*/false);
  REQUIRE_FALSE(per_stage.shared_mixer());
  REQUIRE(per_stage.mixers.size() == L);
  for (std::size_t i = 1; i <= L; ++i) {
    CHECK(&per_stage.mixer_for(i) == &per_stage.mixers[i - 1]);
  }

  const auto stages = random_stages(L, 2, rng);
  const Tensor base = fuse_forward(per_stage, stages).y_final.y;

  // Zeroing one stage's mixer changes the output; the stage selection is
  // live.
  FuseParams tweaked = per_stage;
  tweaked.mixers[1] = {Tensor::zeros({2, 2, 1}), Tensor::zeros({2, 1, 1})};
  CHECK(max_abs_diff(fuse_forward(tweaked, stages).y_final.y, base) > 0.0);

  const std::string dir = "ckpt_perstage_dir";
  save_params(dir, per_stage);
  const FuseParams back = load_params(dir);
  REQUIRE_FALSE(back.shared_mixer());
  REQUIRE(back.mixers.size() == L);
  CHECK(max_abs_diff(fuse_forward(back, stages).y_final.y, base) == 0.0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("checkpoint round-trips parameters exactly") {
  FuseParams params =
      FuseParams::random({3, 4, 5}, 2, 4, Activation::kSigmoid, 123);
  std::mt19937_64 rng(47);
  for (auto& a : params.aligns) a.bias = random_tensor(a.bias.shape(), rng);

  const std::string dir = "ckpt_test_dir";
  save_params(dir, params);
  const FuseParams back = load_params(dir);

  CHECK(back.n_classes == params.n_classes);
  CHECK(back.mem_channels == params.mem_channels);
  CHECK(back.activation == params.activation);
  const auto a = params.named();
  const auto b = back.named();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first == b[i].first);
    REQUIRE(a[i].second->shape() == b[i].second->shape());
    for (std::size_t j = 0; j < a[i].second->size(); ++j) {
      CHECK(a[i].second->data()[j] == b[i].second->data()[j]);
    }
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(load_params(dir), IoError);
}
