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

#ifndef LMFUSE_ORDERLAB_BENCH_HPP_
#define LMFUSE_ORDERLAB_BENCH_HPP_

#include <string>
#include <vector>

#include "lmfuse/multistep/ivp.hpp"

namespace lmfuse::orderlab {

// Analytic test problem. exact_dy is the independently written derivative of
// the exact solution; the self-check compares it against rhs(t, exact(t)) to
// catch transcription slips in either formula.
struct BenchProblem {
  std::string name;
  multistep::IvpProblem problem;
  multistep::ExactFn exact_dy;  // optional
};

// Fixed battery: zero dynamics, exponential decay/growth, a cosine forcing,
// monomial right-hand sides of degree 0..4, and a 2x2 rotation system with
// its closed-form solution.
std::vector<BenchProblem> standard_suite();

// Max residual |d/dt exact - rhs(t, exact)| over interior sample points,
// using exact_dy when present and a fourth-order stencil otherwise.
double self_check_residual(const BenchProblem& bench, int samples = 100);

}  // namespace lmfuse::orderlab

#endif  // LMFUSE_ORDERLAB_BENCH_HPP_
