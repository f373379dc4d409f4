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

#include "lmfuse/orderlab/bench.hpp"

#include <cmath>
#include <numbers>

namespace lmfuse::orderlab {

using multistep::Vec;

std::vector<BenchProblem> standard_suite() {
  std::vector<BenchProblem> suite;

  suite.push_back({"zero",
                   {[](double, const Vec& y) { return Vec(y.size(), 0.0); },
                    {1.0},
                    0.0,
                    1.0,
                    [](double) { return Vec{1.0}; }},
                   [](double) { return Vec{0.0}; }});

  suite.push_back({"decay",
                   {[](double, const Vec& y) { return Vec{-y[0]}; },
                    {1.0},
                    0.0,
                    1.0,
                    [](double t) { return Vec{std::exp(-t)}; }},
                   [](double t) { return Vec{-std::exp(-t)}; }});

  suite.push_back({"lambda-neg2",
                   {[](double, const Vec& y) { return Vec{-2.0 * y[0]}; },
                    {1.0},
                    0.0,
                    1.0,
                    [](double t) { return Vec{std::exp(-2.0 * t)}; }},
                   [](double t) { return Vec{-2.0 * std::exp(-2.0 * t)}; }});

  suite.push_back({"lambda-pos05",
                   {[](double, const Vec& y) { return Vec{0.5 * y[0]}; },
                    {1.0},
                    0.0,
                    1.0,
                    [](double t) { return Vec{std::exp(0.5 * t)}; }},
                   [](double t) { return Vec{0.5 * std::exp(0.5 * t)}; }});

  suite.push_back({"cosine",
                   {[](double t, const Vec&) { return Vec{std::cos(t)}; },
                    {0.0},
                    0.0,
                    std::numbers::pi / 2.0,
                    [](double t) { return Vec{std::sin(t)}; }},
                   [](double t) { return Vec{std::cos(t)}; }});

  for (int k = 0; k <= 4; ++k) {
    suite.push_back(
        {"poly" + std::to_string(k),
         {[k](double t, const Vec&) { return Vec{std::pow(t, k)}; },
          {0.0},
          0.0,
          1.0,
          [k](double t) { return Vec{std::pow(t, k + 1) / (k + 1)}; }},
         [k](double t) { return Vec{std::pow(t, k)}; }});
  }

  // y' = A y with A = [[0, 1], [-1, 0]]: rotation, e^{At} known in closed
  // form.
  suite.push_back(
      {"rotation",
       {[](double, const Vec& y) {
          return Vec{y[1], -y[0]};
        },
        {1.0, 0.0},
        0.0,
        1.0,
        [](double t) {
          return Vec{std::cos(t), -std::sin(t)};
        }},
       [](double t) {
         return Vec{-std::sin(t), -std::cos(t)};
       }});

  return suite;
}

double self_check_residual(const BenchProblem& bench, int samples) {
  const auto& p = bench.problem;
  if (!p.exact) throw ConfigError("self_check_residual needs problem.exact");
  double worst = 0.0;
  const double h = 1e-3;
  for (int k = 1; k <= samples; ++k) {
    const double t = p.t0 + (p.t1 - p.t0) * k / (samples + 1);
    const Vec rhs_val = p.rhs(t, p.exact(t));
    Vec deriv;
    if (bench.exact_dy) {
      deriv = bench.exact_dy(t);
    } else {
      // 5-point central stencil: exact for quartics.
      const Vec f2p = p.exact(t + 2 * h), f1p = p.exact(t + h);
      const Vec f1m = p.exact(t - h), f2m = p.exact(t - 2 * h);
      deriv.resize(rhs_val.size());
      for (std::size_t i = 0; i < deriv.size(); ++i) {
        deriv[i] = (-f2p[i] + 8 * f1p[i] - 8 * f1m[i] + f2m[i]) / (12 * h);
      }
    }
    for (std::size_t i = 0; i < rhs_val.size(); ++i) {
      worst = std::max(worst, std::abs(deriv[i] - rhs_val[i]));
    }
  }
  return worst;
}

}  // namespace lmfuse::orderlab
