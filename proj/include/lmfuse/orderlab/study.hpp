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

#ifndef LMFUSE_ORDERLAB_STUDY_HPP_
#define LMFUSE_ORDERLAB_STUDY_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "lmfuse/orderlab/bench.hpp"

namespace lmfuse::orderlab {

// Verification mode per scheme: explicit schemes run pure with exact
// start-up, implicit ones with the analytic stand-in for the implicit node.
multistep::SolveMode mode_for(const multistep::MultistepScheme& scheme);

struct OrderStudyRow {
  std::string problem;
  std::string scheme;
  int steps = 0;
  int nominal_order = 0;
  int n_steps = 0;
  double delta = 0.0;
  double max_error = 0.0;
  double slope = 0.0;  // vs the previous resolution; NaN on the first row
};

// Errors and Richardson slopes for every (problem, scheme, resolution)
// cell. Resolutions must hold at least two values.
std::vector<OrderStudyRow> run_order_study(
    const std::vector<multistep::MultistepScheme>& schemes,
    const std::vector<BenchProblem>& suite, const std::vector<int>& resolutions);

// CSV with header scheme,steps,nominal_order,delta,max_error,empirical_order
// and a `# problem = <name>` comment line whenever the problem changes.
void write_order_csv(const std::vector<OrderStudyRow>& rows, std::ostream& out);

// One pass/fail verdict per scheme on the decay problem: Richardson slope
// within +-0.25 of the nominal order.
struct OrderClaim {
  std::string scheme;
  int nominal = 0;
  double slope = 0.0;
  bool pass = false;
};
std::vector<OrderClaim> certify_orders(int n_coarse = 64);
std::string order_report(const std::vector<OrderClaim>& claims);

// Runs the fusion scheduler on 1x1 tensors wired so the memory update
// reduces to the scalar linear ODE y' = -y + (a y + b x), x(t) = 1, y(0)=0,
// and compares Y_final with the closed-form solution at t = 1.
struct SchedulerOdeCase {
  std::string name;
  double a = 0.0;
  double b = 0.0;
  std::vector<std::pair<int, double>> errors;  // (L, |Y_final - y(1)|)
};
struct SchedulerOdeReport {
  std::vector<SchedulerOdeCase> cases;
  std::string text() const;
  // Trivial cases at round-off, forced case shrinking in L and within tol
  // at the finest L.
  bool pass(double tol_at_finest = 1e-2) const;
};
SchedulerOdeReport scheduler_ode_check(const std::vector<int>& l_values);

}  // namespace lmfuse::orderlab

#endif  // LMFUSE_ORDERLAB_STUDY_HPP_
