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

#ifndef LMFUSE_FUSECORE_SCHEDULE_HPP_
#define LMFUSE_FUSECORE_SCHEDULE_HPP_

#include <string>
#include <vector>

#include "lmfuse/fusecore/params.hpp"
#include "lmfuse/multistep/rational.hpp"
#include "lmfuse/multistep/scheme.hpp"

namespace lmfuse::fusecore {

// One line of the decode plan. Stages 1..L-1 are predictor-corrector pairs;
// stage L is the final explicit step (corr == "none").
struct TraceEntry {
  std::size_t stage = 0;
  std::string pred;  // "AB1".."AB4"
  std::string corr;  // "AM1".."AM3" or "none"
  long pred_lo = 0, pred_hi = 0;  // node window the predictor consumes
  long corr_lo = 0, corr_hi = 0;  // node window the corrector consumes
  std::vector<multistep::Rational> pred_b;
  std::vector<multistep::Rational> corr_b;
};

// Fully resolved decode plan plus, after execution, the instrumentation
// counter of right-hand-side evaluations (one per stage).
struct ScheduleTrace {
  std::size_t stages = 0;
  int max_order = 4;
  multistep::Rational delta{1, 1};
  std::vector<TraceEntry> entries;
  std::size_t rhs_evals = 0;

  // One line per stage:
  //   i=<k> pred=<scheme> corr=<scheme|none> hist=<lo>..<hi> delta=<rational>
  // where hist spans every node the stage consumed.
  std::string text() const;
};

// Resolves the scheme ladder for an L-stage decode with step size 1/L:
// stage i predicts with AB_min(i,cap) and corrects with AM_min(i,cap,3);
// the final stage takes one explicit AB_min(L,cap) step. cap = 4 is the
// uncapped schedule. Throws ConfigError for L < 2 or cap outside 1..4.
ScheduleTrace plan_schedule(std::size_t stages, int max_order = 4);

// Aligns one skip connection with the memory flow: bilinear-resize to the
// output resolution, then 1x1-project to the memory channel count.
Tensor g_align(const FuseParams& params, const StageInput& stage,
               std::size_t out_h, std::size_t out_w);

// The memory-update derivative  F = -y + act(W_f (y + g(x)) + b_f).
Tensor rhs_eval(const FuseParams& params, const StageInput& stage,
                const Tensor& y);

struct FuseResult {
  MemoryFlow y_final;
  ScheduleTrace trace;
};

// Runs the full decode over the stage pyramid: Y_1 = 0, one rhs evaluation
// per stage (the corrector reuses the predicted-state evaluation), final
// explicit step. Differentiable when the parameters are tape-bound.
FuseResult fuse_forward(const FuseParams& params,
                        const std::vector<StageInput>& stages);

// Same with the scheme ladder capped; max_order = 4 reproduces
// fuse_forward bit for bit, max_order = 1 degenerates to repeated
// PC(AB1, AM1).
FuseResult fuse_forward_order_capped(const FuseParams& params,
                                     const std::vector<StageInput>& stages,
                                     int max_order);

// 1x1 projection of the final memory flow to raw class logits.
Tensor head(const FuseParams& params, const MemoryFlow& y_final);

}  // namespace lmfuse::fusecore

#endif  // LMFUSE_FUSECORE_SCHEDULE_HPP_
