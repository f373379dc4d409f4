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

#ifndef LMFUSE_MULTISTEP_IVP_HPP_
#define LMFUSE_MULTISTEP_IVP_HPP_

#include <functional>
#include <vector>

#include "lmfuse/multistep/history.hpp"
#include "lmfuse/multistep/scheme.hpp"

namespace lmfuse::multistep {

using Vec = std::vector<double>;
using RhsFn = std::function<Vec(double t, const Vec& y)>;
using ExactFn = std::function<Vec(double t)>;

// Initial value problem y' = rhs(t, y), y(t0) = y0, integrated to t1.
// `exact`, when provided, is the analytic solution used for start-up and
// error measurement.
struct IvpProblem {
  RhsFn rhs;
  Vec y0;
  double t0 = 0.0;
  double t1 = 1.0;
  ExactFn exact;  // may be empty
};

// Explicit step: y_next = y + delta * sum_j b[j] * F_j over the scheme's
// step-count newest history entries (oldest coefficient first). The newest
// entry must sit at the current node.
Vec ab_step(const MultistepScheme& scheme, const Vec& y,
            const RhsHistory<Vec>& hist, double delta);

// Implicit step with the value at the target node supplied explicitly:
// y_next = y + delta * (sum_{j<s} b[j] * F_j + b[s] * f_new).
Vec am_step(const MultistepScheme& scheme, const Vec& y,
            const RhsHistory<Vec>& hist, const Vec& f_new, double delta);

struct PcResult {
  Vec y_next;
  Vec f_next;  // rhs evaluated at the predicted state, for history storage
};

// Predictor-corrector step: predict with an explicit scheme, evaluate the
// right-hand side once at the predicted state, then apply the implicit
// scheme with that evaluation in the new-node slot. The returned f_next is
// the predicted-state evaluation; callers push it into the history so each
// node costs exactly one rhs call.
PcResult pc_step(const MultistepScheme& pred, const MultistepScheme& corr,
                 const RhsFn& rhs, double t_next, const Vec& y,
                 const RhsHistory<Vec>& hist, double delta);

// How solve_ivp advances the solution.
//
//   pure_ab(s)   fixed s-step Adams-Bashforth; start-up states come from the
//                analytic solution when available, else from the adaptive
//                bootstrap ladder (which re-evaluates F at corrected states
//                so the hand-off history is clean).
//   pure_am(s)   fixed s-step Adams-Moulton with the implicit-node value fed
//                from the analytic solution in place of an implicit solve;
//                requires `exact`. Used to certify the implicit orders.
//   pc(p, c)     AB_p predictor + AM_c corrector at every node; start-up
//                states come from the analytic solution when available,
//                else the step counts ramp up from 1 while history is short.
//   adaptive_bootstrap  the ladder: PC(AB_i, AM_i) while i < 4 history
//                entries exist, then PC(AB_4, AM_3).
struct SolveMode {
  enum class Kind { kPureAb, kPureAm, kPredictorCorrector, kAdaptiveBootstrap };
  Kind kind = Kind::kPredictorCorrector;
  int pred_steps = 1;
  int corr_steps = 1;

  static SolveMode pure_ab(int s) { return {Kind::kPureAb, s, 0}; }
  static SolveMode pure_am(int s) { return {Kind::kPureAm, 0, s}; }
  static SolveMode pc(int p, int c) {
    return {Kind::kPredictorCorrector, p, c};
  }
  static SolveMode adaptive_bootstrap() {
    return {Kind::kAdaptiveBootstrap, 4, 3};
  }

  std::string name() const;
};

struct TrajectoryPoint {
  double t;
  Vec y;
};

// Integrates with uniform delta = (t1 - t0) / n_steps and returns the
// n_steps + 1 trajectory points including the initial one.
std::vector<TrajectoryPoint> solve_ivp(const IvpProblem& problem,
                                       const SolveMode& mode, int n_steps);

// Max-norm error against problem.exact at the final time.
double final_error(const IvpProblem& problem, const SolveMode& mode,
                   int n_steps);

// Richardson slope log2(err(n_coarse) / err(2 n_coarse)) with errors taken
// in the max norm at t1. Returns +infinity when the fine error vanishes
// (scheme integrates the problem exactly). Requires problem.exact and
// n_coarse >= 8.
double empirical_order(const IvpProblem& problem, const SolveMode& mode,
                       int n_coarse);

}  // namespace lmfuse::multistep

#endif  // LMFUSE_MULTISTEP_IVP_HPP_
