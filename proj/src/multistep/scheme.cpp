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

#include "lmfuse/multistep/scheme.hpp"

namespace lmfuse::multistep {

MultistepScheme scheme_coeffs(Family family, int steps) {
  if (family == Family::kAdamsBashforth) {
    switch (steps) {
      case 1:
        return {family, 1, {{1, 1}}, 1};
      case 2:
        return {family, 2, {{-1, 2}, {3, 2}}, 2};
      case 3:
        return {family, 3, {{5, 12}, {-16, 12}, {23, 12}}, 3};
      case 4:
        return {family, 4, {{-9, 24}, {37, 24}, {-59, 24}, {55, 24}}, 4};
      default:
        break;
    }
    throw UnsupportedSchemeError("Adams-Bashforth supports 1..4 steps, got " +
                                 std::to_string(steps));
  }
  switch (steps) {
    case 1:
      return {family, 1, {{1, 2}, {1, 2}}, 2};
    case 2:
      return {family, 2, {{-1, 12}, {8, 12}, {5, 12}}, 3};
    case 3:
      return {family, 3, {{1, 24}, {-5, 24}, {19, 24}, {9, 24}}, 4};
    default:
      break;
  }
  throw UnsupportedSchemeError("Adams-Moulton supports 1..3 steps, got " +
                               std::to_string(steps));
}

std::vector<MultistepScheme> all_schemes() {
  std::vector<MultistepScheme> out;
  for (int s = 1; s <= 4; ++s)
    out.push_back(scheme_coeffs(Family::kAdamsBashforth, s));
  for (int s = 1; s <= 3; ++s)
    out.push_back(scheme_coeffs(Family::kAdamsMoulton, s));
  return out;
}

}  // namespace lmfuse::multistep
