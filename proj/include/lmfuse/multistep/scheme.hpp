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

#ifndef LMFUSE_MULTISTEP_SCHEME_HPP_
#define LMFUSE_MULTISTEP_SCHEME_HPP_

#include <string>
#include <vector>

#include "lmfuse/multistep/rational.hpp"

namespace lmfuse::multistep {

enum class Family {
  kAdamsBashforth,  // explicit, s-step variant has order s
  kAdamsMoulton,    // implicit, s-step variant has order s+1
};

// One Adams-family linear multistep scheme.
//
// An s-step scheme advances y across one node:
//   AB:  y_next = y + delta * sum_{j=0..s-1} b[j] * F_j
//   AM:  y_next = y + delta * (sum_{j=0..s-1} b[j] * F_j + b[s] * F_new)
// with the F_j ordered oldest to newest and F_new sitting at the target node.
// Coefficients are exact rationals in their textbook table form and satisfy
// sum(b) == 1.
struct MultistepScheme {
  Family family;
  int steps;                // s
  std::vector<Rational> b;  // oldest -> newest; size s (AB) or s+1 (AM)
  int order;                // s for AB, s+1 for AM

  std::string name() const {
    return (family == Family::kAdamsBashforth ? "AB" : "AM") +
           std::to_string(steps);
  }

  Rational coeff_sum() const {
    Rational s(0, 1);
    for (const Rational& c : b) s = s + c;
    return s;
  }
};

// Looks up the coefficient table. Supported: AB with 1..4 steps, AM with
// 1..3 steps. Throws UnsupportedSchemeError otherwise.
MultistepScheme scheme_coeffs(Family family, int steps);

// All seven supported schemes, AB1..AB4 then AM1..AM3.
std::vector<MultistepScheme> all_schemes();

}  // namespace lmfuse::multistep

#endif  // LMFUSE_MULTISTEP_SCHEME_HPP_
