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
#include <cstdio>
#include <random>

#include "doctest.h"
#include "lmfuse/diffarray/io.hpp"
#include "lmfuse/diffarray/ops.hpp"
#include "lmfuse/diffarray/tape.hpp"

using namespace lmfuse;
using namespace lmfuse::diffarray;

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

// Relative error with a floor, so near-zero gradient entries do not blow up
// the ratio.
double rel_err(const Tensor& a, const Tensor& b) {
  REQUIRE(a.shape() == b.shape());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a.data()[i], y = b.data()[i];
    const double denom = std::max({std::abs(x), std::abs(y), 1e-6});
    worst = std::max(worst, std::abs(x - y) / denom);
  }
  return worst;
}

}  // namespace

TEST_CASE("channel_project: identity weight is a no-op") {
  std::mt19937_64 rng(7);
  const Tensor x = random_tensor({3, 4, 4}, rng);
  std::vector<double> wv(9, 0.0);
  wv[0] = wv[4] = wv[8] = 1.0;
  const Tensor w({3, 3, 1}, std::move(wv));
  const Tensor b = Tensor::zeros({3, 1, 1});
  CHECK(max_abs_diff(channel_project(x, w, b), x) == 0.0);
}

TEST_CASE("channel_project: all-ones input with summing weight") {
  const Tensor x = Tensor::full({2, 2, 2}, 1.0);
  const Tensor w({1, 2, 1}, {1.0, 1.0});
  const Tensor b({1, 1, 1}, {0.5});
  const Tensor out = channel_project(x, w, b);
  for (double v : out.data()) CHECK(v == 2.5);
}

TEST_CASE("channel_project matches a triple-loop oracle") {
  std::mt19937_64 rng(42);
  const Tensor x = random_tensor({4, 8, 8}, rng);
  const Tensor w = random_tensor({6, 4, 1}, rng);
  const Tensor b = random_tensor({6, 1, 1}, rng);
  const Tensor out = channel_project(x, w, b);

  for (std::size_t c = 0; c < 6; ++c) {
    for (std::size_t h = 0; h < 8; ++h) {
      for (std::size_t ww = 0; ww < 8; ++ww) {
        double acc = b.at(c, 0, 0);
        for (std::size_t k = 0; k < 4; ++k) {
          acc += w.at(c, k, 0) * x.at(k, h, ww);
        }
        CHECK(std::abs(out.at(c, h, ww) - acc) < 1e-14);
      }
    }
  }
}

TEST_CASE("channel_project rejects mismatched shapes") {
  const Tensor x = Tensor::zeros({3, 2, 2});
  CHECK_THROWS_AS(
      channel_project(x, Tensor::zeros({2, 4, 1}), Tensor::zeros({2, 1, 1})),
      DimensionError);
  CHECK_THROWS_AS(
      channel_project(x, Tensor::zeros({2, 3, 1}), Tensor::zeros({3, 1, 1})),
      DimensionError);
}

TEST_CASE("resize_bilinear: constants are fixed points") {
  const Tensor x = Tensor::full({2, 3, 5}, 3.0);
  const Tensor up = resize_bilinear(x, 11, 7);
  for (double v : up.data()) CHECK(v == 3.0);
}

TEST_CASE("resize_bilinear: resize to own shape is bit-exact identity") {
  std::mt19937_64 rng(3);
  const Tensor x = random_tensor({1, 2, 2}, rng);
  const Tensor same = resize_bilinear(x, 2, 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(same.data()[i] == x.data()[i]);
  }
}

TEST_CASE("resize_bilinear: 2x2 -> 3x3 hand-computed grid") {
  // Corner-aligned: sample coordinates {0, 0.5, 1} per axis.
  const Tensor x({1, 2, 2}, {0.0, 1.0, 2.0, 3.0});
  const Tensor up = resize_bilinear(x, 3, 3);
  const std::vector<double> expected = {0.0, 0.5, 1.0, 1.0, 1.5,
                                        2.0, 2.0, 2.5, 3.0};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(up.data()[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  }
  CHECK(up.at(0, 1, 1) == doctest::Approx(1.5));
}

TEST_CASE("resize_bilinear rejects zero targets") {
  const Tensor x = Tensor::zeros({1, 2, 2});
  CHECK_THROWS_AS(resize_bilinear(x, 0, 2), DimensionError);
  CHECK_THROWS_AS(resize_bilinear(x, 2, 0), DimensionError);
}

TEST_CASE("pointwise: relu, sigmoid, tanh basics") {
  const Tensor neg = Tensor::full({2, 2, 2}, -1.5);
  for (double v : pointwise(neg, Activation::kRelu)) CHECK(v == 0.0);

  const Tensor zero = Tensor::zeros({1, 3, 3});
  for (double v : pointwise(zero, Activation::kSigmoid))
    CHECK(v == 0.5);

  std::mt19937_64 rng(11);
  const Tensor x = random_tensor({2, 4, 4}, rng, -3.0, 3.0);
  const Tensor t = pointwise(x, Activation::kTanh);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(t.data()[i] - std::tanh(x.data()[i])) < 1e-15);
  }
}

TEST_CASE("weighted_sum: identity, cancellation, loop oracle") {
  std::mt19937_64 rng(5);
  const Tensor x = random_tensor({2, 3, 3}, rng);
  const Tensor y = random_tensor({2, 3, 3}, rng);

  const Tensor same = weighted_sum(std::vector<double>{1.0}, {x});
  CHECK(max_abs_diff(same, x) == 0.0);

  const Tensor zero = weighted_sum(std::vector<double>{1.0, -1.0}, {x, x});
  for (double v : zero.data()) CHECK(v == 0.0);

  const Tensor mix = weighted_sum(std::vector<double>{1.5, -0.5}, {x, y});
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double expect = 1.5 * x.data()[i] - 0.5 * y.data()[i];
    CHECK(std::abs(mix.data()[i] - expect) < 1e-14);
  }
}

TEST_CASE("weighted_sum rejects empty and mismatched inputs") {
  CHECK_THROWS_AS(weighted_sum(std::vector<double>{}, {}), DimensionError);
  const Tensor a = Tensor::zeros({1, 2, 2});
  const Tensor b = Tensor::zeros({1, 2, 3});
  CHECK_THROWS_AS(weighted_sum(std::vector<double>{1.0, 1.0}, {a, b}),
                  DimensionError);
  CHECK_THROWS_AS(weighted_sum(std::vector<double>{1.0}, {a, a}),
                  DimensionError);
}

TEST_CASE("weighted_sum is linear in its stacked terms") {
  std::mt19937_64 rng(17);
  const Shape s{2, 4, 4};
  const Tensor x1 = random_tensor(s, rng), z1 = random_tensor(s, rng);
  const Tensor x2 = random_tensor(s, rng), z2 = random_tensor(s, rng);
  const std::vector<double> coeffs{0.25, -2.0};
  const std::vector<double> ab{0.7, -1.3};

  const Tensor blended = weighted_sum(
      coeffs, {weighted_sum(ab, {x1, x2}), weighted_sum(ab, {z1, z2})});
  const Tensor split = weighted_sum(
      ab, {weighted_sum(coeffs, {x1, z1}), weighted_sum(coeffs, {x2, z2})});
  CHECK(max_abs_diff(blended, split) < 1e-12);
}

TEST_CASE("output shapes depend only on input shapes") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 25; ++trial) {
    const Shape in{dim(rng), dim(rng), dim(rng)};
    const std::size_t cout = dim(rng);
    const std::size_t oh = dim(rng), ow = dim(rng);

    const Tensor a = random_tensor(in, rng);
    const Tensor b = random_tensor(in, rng);
    const Tensor w = random_tensor({cout, in.c, 1}, rng);
    const Tensor bias = random_tensor({cout, 1, 1}, rng);

    CHECK(channel_project(a, w, bias).shape() ==
          channel_project(b, w, bias).shape());
    CHECK(channel_project(a, w, bias).shape() == Shape{cout, in.h, in.w});
    CHECK(resize_bilinear(a, oh, ow).shape() == Shape{in.c, oh, ow});
    CHECK(pointwise(a, Activation::kTanh).shape() == in);
    CHECK(weighted_sum(std::vector<double>{1.0, 2.0}, {a, b}).shape() == in);
    CHECK(sum(a).shape() == Shape{1, 1, 1});
  }
}

TEST_CASE("ops keep finite inputs finite") {
  std::mt19937_64 rng(29);
  const Tensor x = random_tensor({3, 5, 5}, rng, -10.0, 10.0);
  const Tensor w = random_tensor({2, 3, 1}, rng, -10.0, 10.0);
  const Tensor b = random_tensor({2, 1, 1}, rng, -10.0, 10.0);
  CHECK(channel_project(x, w, b).all_finite());
  CHECK(resize_bilinear(x, 9, 2).all_finite());
  CHECK(pointwise(x, Activation::kSigmoid).all_finite());
}

TEST_CASE("backward: sum gives all-ones gradient") {
  GradTape tape;
  const Tensor x = tape.leaf(Tensor::full({2, 3, 3}, 0.25));
  const Tensor loss = sum(x);
  const Gradients g = tape.backward(loss);
  for (double v : g.at(x)) CHECK(v == 1.0);
}

TEST_CASE("backward: zero-weighted path gives zero gradient") {
  GradTape tape;
  const Tensor x = tape.leaf(Tensor::full({1, 2, 2}, 3.0));
  const Tensor loss = sum(weighted_sum(std::vector<double>{0.0}, {x}));
  const Gradients g = tape.backward(loss);
  for (double v : g.at(x)) CHECK(v == 0.0);
}

TEST_CASE("backward: untouched leaves report zeros") {
  GradTape tape;
  const Tensor x = tape.leaf(Tensor::full({1, 2, 2}, 1.0));
  const Tensor y = tape.leaf(Tensor::full({1, 2, 2}, 2.0));
  const Gradients g = tape.backward(sum(x));
  for (double v : g.at(y)) CHECK(v == 0.0);
}

TEST_CASE("backward rejects non-scalar and foreign losses") {
  GradTape tape;
  const Tensor x = tape.leaf(Tensor::full({1, 2, 2}, 1.0));
  CHECK_THROWS_AS(tape.backward(x), ContractError);
  const Tensor off_tape = Tensor::zeros({1, 1, 1});
  CHECK_THROWS_AS(tape.backward(off_tape), ContractError);
}

TEST_CASE("backward is additive over losses") {
  std::mt19937_64 rng(31);
  const Tensor base = random_tensor({2, 3, 3}, rng);

  const auto grad_of = [&](bool first, bool second) {
    GradTape tape;
    const Tensor x = tape.leaf(base);
    const Tensor l1 = sum(pointwise(x, Activation::kTanh));
    const Tensor l2 = sum(weighted_sum(std::vector<double>{2.0}, {x}));
    Tensor loss = Tensor::zeros({1, 1, 1});
    if (first && second) {
      loss = weighted_sum(std::vector<double>{1.0, 1.0}, {l1, l2});
    } else {
      loss = first ? l1 : l2;
    }
    return tape.backward(loss).at(x);
  };
  const Tensor g1 = grad_of(true, false);
  const Tensor g2 = grad_of(false, true);
  const Tensor g12 = grad_of(true, true);
  const Tensor manual = weighted_sum(std::vector<double>{1.0, 1.0}, {g1, g2});
  CHECK(max_abs_diff(g12, manual) < 1e-14);
}

TEST_CASE("finite_diff_grad: sum, zero, quadratic") {
  std::mt19937_64 rng(37);
  const Tensor x = random_tensor({2, 3, 3}, rng);

  const Tensor g1 = finite_diff_grad(
      [](const Tensor& t) { return sum(t).scalar(); }, x, 1e-5);
  for (double v : g1.data()) CHECK(std::abs(v - 1.0) < 1e-10);

  const Tensor g0 =
      finite_diff_grad([](const Tensor&) { return 0.0; }, x, 1e-5);
  for (double v : g0.data()) CHECK(v == 0.0);

  const Tensor gq = finite_diff_grad(
      [](const Tensor& t) {
        double acc = 0.0;
        for (double v : t.data()) acc += 0.5 * v * v;
        return acc;
      },
      x, 1e-5);
  CHECK(max_abs_diff(gq, x) < 1e-6);

  CHECK_THROWS_AS(
      finite_diff_grad([](const Tensor&) { return 0.0; }, x, 0.0),
      ContractError);
}

TEST_CASE("backward matches finite differences on random compositions") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> pick(0, 3);

  for (int trial = 0; trial < 8; ++trial) {
    const Shape in{2, 4, 4};
    const Tensor x0 = random_tensor(in, rng);
    const Tensor w = random_tensor({3, 2, 1}, rng);
    const Tensor b = random_tensor({3, 1, 1}, rng);
    std::vector<int> plan(6);
    for (int& p : plan) p = pick(rng);

    const auto run = [&](const Tensor& input) {
      // Fixed random pipeline of depth 6 over the closed op set.
      Tensor t = input;
      for (int p : plan) {
        switch (p) {
          case 0:
            t = pointwise(t, Activation::kTanh);
            break;
          case 1:
            t = pointwise(t, Activation::kSigmoid);
            break;
          case 2:
            t = weighted_sum(std::vector<double>{0.75, 0.5}, {t, t});
            break;
          case 3:
            t = resize_bilinear(t, 5, 3);
            t = resize_bilinear(t, in.h, in.w);
            break;
        }
      }
      t = channel_project(t, w, b);
      return sum(t);
    };

    GradTape tape;
    const Tensor x = tape.leaf(x0);
    const Tensor loss = run(x);
    const Tensor autograd = tape.backward(loss).at(x);
    const Tensor numeric = finite_diff_grad(
        [&](const Tensor& t) { return run(t).scalar(); }, x0, 1e-5);
    CHECK(rel_err(autograd, numeric) < 1e-4);
  }
}

TEST_CASE("backward: gradients flow into projection weights and bias") {
  std::mt19937_64 rng(43);
  const Tensor x0 = random_tensor({2, 3, 3}, rng);
  const Tensor w0 = random_tensor({2, 2, 1}, rng);
  const Tensor b0 = random_tensor({2, 1, 1}, rng);

  GradTape tape;
  const Tensor w = tape.leaf(w0);
  const Tensor b = tape.leaf(b0);
  const Tensor loss = sum(pointwise(channel_project(x0, w, b),
                                    Activation::kSigmoid));
  const Gradients g = tape.backward(loss);

  const Tensor gw = g.at(w);
  const Tensor fd_w = finite_diff_grad(
      [&](const Tensor& wt) {
        return sum(pointwise(channel_project(x0, wt, b0),
                             Activation::kSigmoid))
            .scalar();
      },
      w0, 1e-5);
  CHECK(rel_err(gw, fd_w) < 1e-4);

  const Tensor gb = g.at(b);
  const Tensor fd_b = finite_diff_grad(
      [&](const Tensor& bt) {
        return sum(pointwise(channel_project(x0, w0, bt),
                             Activation::kSigmoid))
            .scalar();
      },
      b0, 1e-5);
  CHECK(rel_err(gb, fd_b) < 1e-4);
}

TEST_CASE("relu and identity backward on inputs off the kink") {
  // Fixed values bounded away from zero keep the relu subgradient
  // unambiguous for the central-difference comparison.
  const Tensor x0({1, 2, 3}, {-1.3, 0.8, -0.4, 2.1, -2.7, 0.5});
  for (Activation act : {Activation::kRelu, Activation::kIdentity}) {
    const auto run = [act](const Tensor& t) {
      return sum(pointwise(weighted_sum(std::vector<double>{1.5}, {t}), act));
    };
    GradTape tape;
    const Tensor x = tape.leaf(x0);
    const Tensor autograd = tape.backward(run(x)).at(x);
    const Tensor numeric = finite_diff_grad(
        [&](const Tensor& t) { return run(t).scalar(); }, x0, 1e-5);
    CHECK(rel_err(autograd, numeric) < 1e-6);
  }
}

TEST_CASE("backward through resize_bilinear matches finite differences") {
  std::mt19937_64 rng(47);
  const Tensor x0 = random_tensor({2, 3, 4}, rng);
  const auto run = [](const Tensor& t) {
    return sum(pointwise(resize_bilinear(t, 7, 5), Activation::kTanh));
  };
  GradTape tape;
  const Tensor x = tape.leaf(x0);
  const Tensor autograd = tape.backward(run(x)).at(x);
  const Tensor numeric = finite_diff_grad(
      [&](const Tensor& t) { return run(t).scalar(); }, x0, 1e-5);
  CHECK(rel_err(autograd, numeric) < 1e-4);
}

TEST_CASE("FTNSR round-trip is bit-exact") {
  std::mt19937_64 rng(53);
  const Tensor t = random_tensor({3, 4, 5}, rng, -100.0, 100.0);
  const std::string path = "roundtrip_test.ftnsr";
  save_tensor(path, t);
  const Tensor back = load_tensor(path);
  REQUIRE(back.shape() == t.shape());
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(back.data()[i] == t.data()[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("FTNSR rejects garbage") {
  const std::string path = "garbage_test.ftnsr";
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("not a tensor\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_tensor(path), IoError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_tensor("does_not_exist.ftnsr"), IoError);
}
